import itertools

import pytest
from hypothesis import given, settings, strategies as st

from deuring.ternary_forms import (
    TernaryForm,
    automorph_count,
    discriminant,
    enumerate_reduced,
    equivalent,
    evaluate,
    find_transform,
    is_positive_definite,
    is_reduced,
    representation_numbers,
    schiemann_bound,
    schiemann_bound_from_minima,
    short_vectors,
    successive_minima,
)
from table1 import TABLE

J0_29 = TernaryForm(1, 1, 10, 0, 1, 1)


def brute_short_vectors(f, bound, box):
    return sorted(
        (v, evaluate(f, v))
        for v in itertools.product(range(-box, box + 1), repeat=3)
        if any(v) and evaluate(f, v) <= bound
    )


def transform(f, T):
    """The form x -> f(T x) for a 3x3 integer matrix T (rows)."""
    cols = list(zip(*T))
    g = lambda x: evaluate(f, [sum(T[r][c] * x[c] for c in range(3)) for r in range(3)])
    e = lambda i: [int(i == j) for j in range(3)]
    a = [g(e(i)) for i in range(3)]
    cross = lambda i, j: g([u + v for u, v in zip(e(i), e(j))]) - a[i] - a[j]
    return TernaryForm(a[0], a[1], a[2], cross(1, 2), cross(0, 2), cross(0, 1))


UNIMODULAR = [
    ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
    ((0, 1, 0), (1, 0, 0), (0, 0, 1)),
    ((1, 1, 0), (0, 1, 0), (0, 0, 1)),
    ((1, 0, -1), (0, 1, 2), (0, 0, 1)),
    ((2, 1, 0), (1, 1, 0), (0, 0, 1)),
    ((1, 0, 0), (1, 1, 1), (0, 1, 2)),
]


class TestBasics:
    def test_discriminant_j0_29(self):
        assert discriminant(J0_29) == 29

    def test_evaluate_and_str(self):
        assert evaluate(J0_29, (1, 0, 0)) == 1
        assert evaluate(J0_29, (0, 0, 1)) == 10
        assert str(J0_29) == "(1,1,10;0,1,1)"

    def test_positive_definite(self):
        assert is_positive_definite(J0_29)
        assert not is_positive_definite(TernaryForm(1, 2, 5, 2, 2, 3))

    def test_json_round_trip(self):
        f = J0_29.with_tau()
        assert TernaryForm.from_json(f.to_json()) == f
        assert TernaryForm.from_json(f.to_json()).tau == 6

    def test_not_positive_definite_rejected(self):
        with pytest.raises(ValueError):
            short_vectors(TernaryForm(1, 1, 1, 3, 3, 3), 5)


class TestShortVectors:
    @pytest.mark.parametrize("coeffs", [(1, 1, 10, 0, 1, 1), (2, 3, 5, 3, 0, 1), (1, 5, 6, -3, 1, 1),
                                        (2, 2, 7, 0, 2, 1)])
    def test_against_box(self, coeffs):
        f = TernaryForm(*coeffs)
        # every vector with f(v) <= 20 lies in the box [-12, 12]^3 for these forms
        assert sorted(short_vectors(f, 20)) == brute_short_vectors(f, 20, 12)

    def test_representation_numbers(self):
        # x^2 + y^2 + z^2: r(1) = 6, r(2) = 12, r(3) = 8
        r = representation_numbers(TernaryForm(1, 1, 1, 0, 0, 0), 3)
        assert r == [1, 6, 12, 8]


class TestEquivalence:
    @pytest.mark.parametrize("T", UNIMODULAR)
    def test_transformed_forms_are_equivalent(self, T):
        f = TernaryForm(2, 3, 5, 3, 0, 1)
        g = transform(f, T)
        assert discriminant(g) == discriminant(f)
        assert equivalent(f, g)
        v = find_transform(f, g)
        assert v is not None

    def test_distinct_classes(self):
        forms = enumerate_reduced(97)
        for f, g in itertools.combinations(forms, 2):
            assert not equivalent(f, g)

    def test_different_discriminants(self):
        assert not equivalent(J0_29, TernaryForm(1, 1, 8, 0, 1, 0))


class TestTau:
    @pytest.mark.parametrize("p", sorted(TABLE))
    def test_tau_values(self, p):
        assert sorted(f.tau for f in enumerate_reduced(p)) == sorted(t for *_, t in TABLE[p])

    def test_automorph_j0(self):
        assert automorph_count(J0_29) == 6


class TestSchiemann:
    def test_minima(self):
        assert successive_minima(J0_29) == (1, 1, 10)
        assert schiemann_bound(J0_29) == 12

    def test_bound_formula(self):
        assert schiemann_bound_from_minima(1, 1, 1) == pytest.approx(3.5)

    @settings(max_examples=40, deadline=None)
    @given(st.sampled_from([f for p in (29, 53, 97) for f in enumerate_reduced(p)]))
    def test_minima_against_brute_force(self, f):
        vecs = brute_short_vectors(f, max(f.a11, f.a22, f.a33), 10)
        n1, n2, n3 = successive_minima(f)
        assert n1 == min(n for _, n in vecs)
        assert n1 <= n2 <= n3 <= f.a33


class TestEnumeration:
    @pytest.mark.parametrize("p", [11, 13, 17, 19, 23, 29, 37, 97])
    def test_reduced_and_discriminant(self, p):
        forms = enumerate_reduced(p)
        assert forms
        for f in forms:
            assert discriminant(f) == p
            assert is_reduced(f)

    def test_class_numbers(self):
        # type numbers for small p
        assert [len(enumerate_reduced(p)) for p in (11, 13, 17, 19, 23, 29, 31, 37)] == \
            [2, 1, 2, 2, 3, 3, 3, 2]

    def test_deterministic(self):
        assert enumerate_reduced(71) == enumerate_reduced(71)
