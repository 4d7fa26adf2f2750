import random

import pytest

from deuring.clifford_orders import (
    clifford,
    fingerprint,
    gamma_set,
    multiply,
    norm,
    qtilde,
    select_lambda,
    trace,
    trace_norm_pairs,
)
from deuring.ternary_forms import TernaryForm, enumerate_reduced, evaluate
from oracles import brute_trace_norm_pairs, clifford_table

J0_29 = TernaryForm(1, 1, 10, 0, 1, 1)


def det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def random_element(order, rng, size=6):
    return order.element(tuple(rng.randint(-size, size) for _ in range(4)))


class TestPresentation:
    def test_relation_line_for_j0(self):
        lines = clifford(J0_29).relations()
        assert "e1² = −10" in lines

    def test_matches_independent_table(self):
        rng = random.Random(3)
        for f in enumerate_reduced(61):
            order = clifford(f)
            mult, traces = clifford_table(*f.coefficients)
            assert order.basis_traces == traces
            for _ in range(50):
                x = tuple(rng.randint(-4, 4) for _ in range(4))
                y = tuple(rng.randint(-4, 4) for _ in range(4))
                assert multiply(order.element(x), order.element(y)).x == mult(x, y)

    def test_json_products(self):
        d = clifford(J0_29).to_json()
        assert d["basis"] == ["1", "e1", "e2", "e3"]
        assert len(d["products"]) == 9


@pytest.mark.parametrize("p", [29, 53, 97])
class TestAlgebra:
    def test_associative_on_basis(self, p):
        for f in enumerate_reduced(p):
            order = clifford(f)
            basis = order.basis()
            for a in basis:
                for b in basis:
                    for c in basis:
                        assert (a * b) * c == a * (b * c)

    def test_norm_multiplicative(self, p):
        rng = random.Random(p)
        for f in enumerate_reduced(p):
            order = clifford(f)
            for _ in range(40):
                a, b = random_element(order, rng), random_element(order, rng)
                assert norm(a * b) == norm(a) * norm(b)
                assert trace(a * b) == trace(b * a)
                assert norm(a) >= 0

    def test_qtilde_identity(self, p):
        rng = random.Random(p + 1)
        for f in enumerate_reduced(p):
            order = clifford(f)
            assert det3(qtilde(f)) == 4 * p * p
            for _ in range(40):
                a = random_element(order, rng)
                assert 4 * norm(a) - trace(a) ** 2 == evaluate(order.qtilde_form, a.x[1:])


class TestTraceNorm:
    @pytest.mark.parametrize("coeffs", [(1, 1, 10, 0, 1, 1), (1, 2, 4, 1, 1, 0), (2, 2, 7, 0, 2, 1),
                                        (2, 3, 5, 3, 0, 1), (1, 5, 6, -3, 1, 1)])
    @pytest.mark.parametrize("n", [1, 2, 3, 5, 7, 11])
    def test_against_brute_force(self, coeffs, n):
        f = TernaryForm(*coeffs)
        assert trace_norm_pairs(clifford(f), n) == brute_trace_norm_pairs(coeffs, n)

    def test_units_of_j0_order(self):
        # the units are the sixth roots of unity: +-1 and four of trace +-1
        pairs = trace_norm_pairs(clifford(J0_29), 1)
        assert pairs == {(2, 1), (-2, 1), (1, 1), (-1, 1)}

    def test_gamma_contains_fingerprints(self):
        order = clifford(J0_29)
        assert fingerprint(order, [3, 5]) <= gamma_set(order, 5)

    def test_no_small_norms_at_97(self):
        # the two orders that need ell = 11 to be told apart
        for coeffs in [(2, 2, 7, 0, 2, 1), (2, 3, 5, 3, 0, 1)]:
            order = clifford(TernaryForm(*coeffs))
            assert fingerprint(order, [3, 5, 7]) == frozenset()
            assert brute_trace_norm_pairs(coeffs, 3) == set()
            assert brute_trace_norm_pairs(coeffs, 5) == set()
            assert brute_trace_norm_pairs(coeffs, 7) == set()


class TestSelectLambda:
    def test_single_order(self):
        assert select_lambda([clifford(J0_29)], [6]) == []

    def test_separates(self):
        forms = enumerate_reduced(89)
        orders = [clifford(f) for f in forms]
        ells = select_lambda(orders, [f.tau for f in forms], 89)
        keys = [(f.tau, fingerprint(o, ells)) for f, o in zip(forms, orders)]
        assert len(set(keys)) == len(keys)
        assert ells == [3, 5, 7]

    def test_cap_exceeded(self):
        forms = enumerate_reduced(97)
        with pytest.raises(RuntimeError):
            select_lambda([clifford(f) for f in forms], [f.tau for f in forms], 97, cap=7)
