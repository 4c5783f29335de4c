"""The acceptance battery, one test per criterion.

Each test prints its own pass/fail line (visible under pytest -s or in the
captured output of a failure) and asserts the criterion at tolerance zero.
"""

from twistcap import acceptance


def _report(result):
    line = f"[{'PASS' if result.passed else 'FAIL'}] {result.name}: {result.detail}"
    print(line)
    assert result.passed, line


def test_criterion_01_structural_squares():
    _report(acceptance.check_structural())


def test_criterion_02_lemma1_deck_reversal():
    _report(acceptance.check_lemma1())


def test_criterion_03_lemma2_pushforward():
    _report(acceptance.check_lemma2())


def test_criterion_04_sequences_and_phi():
    _report(acceptance.check_sequences_and_phi())


def test_criterion_05_fundamental_class():
    _report(acceptance.check_fundamental_class())


def test_criterion_06_cap_identity():
    _report(acceptance.check_cap_identity(trials=100, seed=0))


def test_criterion_07_duality():
    _report(acceptance.check_duality(seed=0))


def test_criterion_08_mayer_vietoris():
    _report(acceptance.check_mayer_vietoris())


def test_criterion_09_diagram6():
    _report(acceptance.check_diagram6())


def test_criterion_10_smith_kernel():
    _report(acceptance.check_smith_kernel(count=1000, seed=0))
