"""One test per acceptance criterion; each prints a single PASS/FAIL line.

All comparisons are exact (rational arithmetic, integer dimensions).
"""
import pytest

from operadlab import acceptance


def _check(capsys, number):
    r = acceptance.CRITERIA[number]()
    with capsys.disabled():
        print("\n" + r.line())
    assert r.passed, "; ".join(r.failures[:5])


def test_ass_soul_acyclic_cap7(capsys):
    _check(capsys, 1)


def test_com_lie_souls_match_alternating_identity(capsys):
    _check(capsys, 2)


def test_d_soul_low_degrees(capsys):
    _check(capsys, 3)


def test_mag_symmetric_vs_nonsymmetric(capsys):
    _check(capsys, 4)


def test_canonical_element_invariants(capsys):
    _check(capsys, 5)


def test_cup_product_space_dims(capsys):
    _check(capsys, 6)


def test_permutation_complex_grading(capsys):
    _check(capsys, 7)


def test_permutation_oracle_matches_algebraic(capsys):
    _check(capsys, 8)


def test_algebra_cochain_complexes(capsys):
    _check(capsys, 9)


def test_unary_operations(capsys):
    _check(capsys, 10)


def test_induced_structure_on_cohomology(capsys):
    _check(capsys, 11)


def test_binary_natural_operations_h0(capsys):
    _check(capsys, 12)
