import numpy as np
import pytest
from hypothesis import given, strategies as st

from semipolar.errors import NotSymplectomorphism
from semipolar.normality import NormalityMap, check_ja_constructions, check_map_identities, forms_equivalent
from semipolar.norms import EllipsoidNorm, LpNorm, euclidean
from semipolar.report import PASS
from semipolar.symplectic import SymplecticForm

W1 = SymplecticForm.standard(1)
W2 = SymplecticForm.standard(2)


def test_euclidean_j_is_quarter_turn(rng):
    nm = NormalityMap(euclidean(2), W1)
    assert np.allclose(nm.J([1.0, 0.0]), [0.0, 1.0])
    X = rng.standard_normal((20, 2))
    assert np.allclose(nm.J(X), np.column_stack([-X[:, 1], X[:, 0]]), atol=1e-14)


def test_l4_example():
    nm = NormalityMap(LpNorm(4, 2), W1)
    Jx = nm.J([1.0, 1.0])
    assert np.allclose(Jx, [-2 ** -0.5, 2 ** -0.5], rtol=1e-12)
    # <y, Jx> reproduces f_x(y)
    y = np.array([0.3, -1.7])
    assert W1(y, Jx) == pytest.approx(nm.space.support_functional([1.0, 1.0]) @ y, rel=1e-12)


def test_ja_at_zero():
    nm = NormalityMap(LpNorm(3, 2), W1)
    assert np.array_equal(nm.Ja(np.zeros(2)), [0.0, 0.0])


@given(st.integers(0, 2**31 - 1))
def test_inverse_up_to_sign(seed):
    rng = np.random.default_rng(seed)
    nm = NormalityMap(LpNorm(3, 4), W2)
    x = rng.standard_normal(4)
    assert np.allclose(nm.Ja(nm.J(x)), -x, atol=1e-9)
    assert np.allclose(nm.J(nm.Ja(x)), -x, atol=1e-9)


def test_ja_constructions_agree(rng):
    nm = NormalityMap(EllipsoidNorm(np.diag([2.0, 1.0, 0.5, 3.0])), W2)
    r = check_ja_constructions(nm, rng, tol=1e-8)
    assert r.verdict == PASS, r.deviation


def test_unknown_construction():
    with pytest.raises(ValueError):
        NormalityMap(euclidean(2), W1).Ja([1.0, 0.0], construction="other")


@pytest.mark.parametrize("norm, form, tol", [
    (euclidean(2), W1, 1e-12),
    (LpNorm(4, 2), W1, 1e-6),
    (LpNorm(3, 4), W2, 1e-6),
    (EllipsoidNorm(np.array([[2.0, 0.5], [0.5, 1.0]])), SymplecticForm(np.array([[0.0, 2.0], [-2.0, 0.0]])), 1e-6),
], ids=["euclidean", "l4", "l3-d4", "ellipse-scaled-form"])
def test_identities(norm, form, tol, rng):
    results = check_map_identities(NormalityMap(norm, form), rng, samples=200, tol=tol)
    bad = [(r.id, r.deviation) for r in results if r.verdict != PASS]
    assert not bad


def test_sip_as_form_direct(rng):
    nm = NormalityMap(LpNorm(4, 2), W1)
    x, y = rng.standard_normal((2, 2))
    assert nm.space.sip(x, y) == pytest.approx(W1(x, nm.J(y)), rel=1e-10)


def test_forms_equivalent_identity(rng):
    gap, defect = forms_equivalent(LpNorm(4, 4), W2, W2, np.eye(4), rng)
    assert gap < 1e-12 and defect < 1e-12


def test_forms_equivalent_coordinate_swap(rng):
    # the signed swap (q, p) -> (p, -q) preserves the standard form and the l4 norm
    L = np.array([[0.0, 1.0], [-1.0, 0.0]])
    gap, defect = forms_equivalent(LpNorm(4, 2), W1, W1, L, rng)
    assert gap < 1e-12 and defect < 1e-12


def test_forms_not_equivalent(rng):
    # doubling the form doubles the antinorm, so the gap at x is ||x||_{4/3} on the l4 sphere,
    # whose largest value sqrt(2) sits at the diagonal
    W = SymplecticForm(2 * W1.omega)
    gap, defect = forms_equivalent(LpNorm(4, 2), W1, W, np.eye(2) / np.sqrt(2), rng)
    assert 1.41 < gap <= np.sqrt(2) * (1 + 1e-12)
    assert defect > 1e-3


def test_forms_equivalent_rejects_non_symplectic(rng):
    with pytest.raises(NotSymplectomorphism):
        forms_equivalent(euclidean(2), W1, W1, 2 * np.eye(2), rng)
