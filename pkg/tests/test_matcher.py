import pytest

from deuring.finite_fields import make_field
from deuring.matcher import (
    CorrespondenceViolated,
    LambdaInsufficient,
    PipelineError,
    TauClass,
    build_correspondence,
    match,
    tau_class_of_form,
    tau_class_of_j,
)
from deuring.ternary_forms import TernaryForm

A, B, C = frozenset({(0, 3)}), frozenset({(1, 3)}), frozenset()
R, P = TauClass.RATIONAL_J, TauClass.CONJUGATE_PAIR


class TestMatch:
    def test_unique(self):
        assert match([A, B, C], [B, C, A], [R, R, P], [R, P, R]) == [1, 2, 0]

    def test_ambiguous(self):
        with pytest.raises(LambdaInsufficient):
            match([A, A], [A, A], [R, R], [R, R])

    def test_tau_breaks_tie(self):
        assert match([A, A], [A, A], [R, P], [P, R]) == [1, 0]

    def test_no_bijection(self):
        with pytest.raises(CorrespondenceViolated):
            match([A, B], [A, C], [R, R], [R, R])

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            match([A], [A, B], [R], [R, R])


class TestTauClasses:
    def test_j_classes(self):
        F = make_field(43, 2)
        assert tau_class_of_j(F.zero) is TauClass.ZERO_J
        assert tau_class_of_j(F(1728)) is TauClass.J1728
        assert tau_class_of_j(F(41)) is TauClass.RATIONAL_J
        assert tau_class_of_j(F([12, 8])) is TauClass.CONJUGATE_PAIR

    def test_form_class(self):
        assert tau_class_of_form(TernaryForm(1, 1, 10, 0, 1, 1)) is TauClass.ZERO_J
        assert TauClass.J1728.tau == 4 and TauClass.J1728.label == "j1728"


class TestBuild:
    @pytest.mark.parametrize("p", [11, 13, 17, 19, 23])
    def test_small_primes(self, p):
        corr = build_correspondence(p)
        assert len(corr.entries) == len(corr.sigma)
        for e in corr.entries:
            assert e.spl == e.isog
            assert e.tau_class.tau == e.form.tau

    def test_deterministic(self):
        a, b = build_correspondence(41), build_correspondence(41)
        assert a.sigma == b.sigma and a.ells == b.ells
        assert [e.form for e in a.entries] == [e.form for e in b.entries]

    def test_override_insufficient(self):
        with pytest.raises(PipelineError, match="step 4"):
            build_correspondence(97, ells=[3, 5, 7])

    def test_override_bad_prime(self):
        with pytest.raises(PipelineError):
            build_correspondence(29, ells=[29])

    def test_override_accepted(self):
        corr = build_correspondence(29, ells=[5, 3])
        assert corr.ells == [3, 5]

    def test_rejects_small_p(self):
        with pytest.raises(PipelineError):
            build_correspondence(7)

    def test_orbits(self):
        corr = build_correspondence(37)
        assert sorted(len(e.orbit) for e in corr.entries) == [1, 2]
