"""The full pipeline: forms -> orders -> supersingular j's -> fingerprints -> bijection."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

from sympy import isprime, nextprime

from .clifford_orders import OrderPresentation, clifford, fingerprint, select_lambda
from .finite_fields import FieldElement
from .supersingular_curves import (
    SupersingularSet,
    conjugate,
    is_rational,
    supersingular_j_list,
)
from .ternary_forms import TernaryForm, enumerate_reduced, schiemann_bound
from .velu_isogenies import isog_fingerprint

log = logging.getLogger(__name__)


class TauClass(Enum):
    ZERO_J = ("zero_j", 6)
    J1728 = ("j1728", 4)
    RATIONAL_J = ("rational_j", 2)
    CONJUGATE_PAIR = ("conjugate_pair", 1)

    @property
    def label(self) -> str:
        return self.value[0]

    @property
    def tau(self) -> int:
        return self.value[1]


_BY_TAU = {c.tau: c for c in TauClass}


class PipelineError(RuntimeError):
    def __init__(self, step: str, message: str):
        super().__init__(f"[{step}] {message}")
        self.step = step


class CorrespondenceViolated(PipelineError):
    pass


class LambdaInsufficient(PipelineError):
    pass


def tau_class_of_j(j: FieldElement) -> TauClass:
    if j == 0:
        return TauClass.ZERO_J
    if j == 1728:
        return TauClass.J1728
    if is_rational(j):
        return TauClass.RATIONAL_J
    return TauClass.CONJUGATE_PAIR


def tau_class_of_form(f: TernaryForm) -> TauClass:
    tau = f.with_tau().tau
    try:
        return _BY_TAU[tau]
    except KeyError:
        raise PipelineError("step 1", f"form {f} has tau={tau}, outside {{1, 2, 4, 6}}") from None


def match(spl: Sequence[frozenset], isog: Sequence[frozenset],
          form_classes: Sequence[TauClass], j_classes: Sequence[TauClass]) -> list[int]:
    """The unique sigma with isog[i] == spl[sigma[i]] and matching tau classes.

    Every admissible assignment is enumerated, so uniqueness is checked rather
    than assumed.
    """
    t = len(spl)
    if len(isog) != t or len(form_classes) != t or len(j_classes) != t:
        raise ValueError("fingerprint families have different lengths")
    ok = [[j_classes[i] == form_classes[k] and isog[i] == spl[k] for k in range(t)]
          for i in range(t)]
    solutions: list[list[int]] = []
    sigma: list[int] = []
    used = [False] * t

    def extend(i: int):
        if i == t:
            solutions.append(list(sigma))
            return
        for k in range(t):
            if ok[i][k] and not used[k]:
                used[k] = True
                sigma.append(k)
                extend(i + 1)
                sigma.pop()
                used[k] = False

    extend(0)
    if not solutions:
        raise CorrespondenceViolated("step 6", "correspondence violated: no bijection between curves and orders")
    if len(solutions) > 1:
        raise LambdaInsufficient("step 6", f"Λ insufficient: {len(solutions)} bijections")
    return solutions[0]


@dataclass
class Entry:
    j: FieldElement
    orbit: list
    form: TernaryForm
    order: OrderPresentation
    tau_class: TauClass
    spl: frozenset
    isog: frozenset


@dataclass
class Correspondence:
    p: int
    ells: list
    entries: list
    sigma: list
    supersingular: Optional[SupersingularSet] = None

    @property
    def t(self) -> int:
        return len(self.entries)


def _check_ells(ells: Sequence[int], p: int):
    for ell in ells:
        if not isprime(ell) or ell == p or ell == 2:
            raise PipelineError("step 4", f"Λ entry {ell} must be an odd prime different from p")


def build_correspondence(p: int, ells: Optional[Sequence[int]] = None, seed: int = 0) -> Correspondence:
    """Run the whole algorithm for one prime p >= 11."""
    if not isprime(p) or p < 11:
        raise PipelineError("input", f"p={p} must be a prime >= 11")

    forms = enumerate_reduced(p)
    orders = [clifford(f) for f in forms]
    form_classes = [tau_class_of_form(f) for f in forms]
    log.info("p=%d step 1-2: %d form classes", p, len(forms))

    try:
        ss = supersingular_j_list(p)
    except ArithmeticError as exc:
        raise PipelineError("step 3", str(exc)) from exc
    js = ss.representatives
    j_classes = [tau_class_of_j(j) for j in js]
    if len(js) != len(forms):
        raise PipelineError("step 3", f"{len(js)} j-orbits but {len(forms)} form classes")
    if sorted(c.label for c in j_classes) != sorted(c.label for c in form_classes):
        raise PipelineError("step 3", "tau classes of curves and forms disagree")

    taus = [f.tau for f in forms]
    cap = max(schiemann_bound(f) for f in forms)
    if ells is None:
        try:
            ells = select_lambda(orders, taus, p, cap)
        except RuntimeError as exc:
            raise PipelineError("step 4", str(exc)) from exc
    else:
        ells = sorted(set(ells))
        _check_ells(ells, p)
        keys = [(tau, fingerprint(o, ells)) for tau, o in zip(taus, orders)]
        if len(set(keys)) != len(keys):
            raise PipelineError("step 4", f"Λ={ells} does not separate the order types")
    ells = list(ells)
    log.info("p=%d step 4: Λ=%s", p, ells)

    while True:
        spl = [fingerprint(o, ells) for o in orders]
        try:
            isog = [isog_fingerprint(j, ells, seed) for j in js]
        except ArithmeticError as exc:
            raise PipelineError("step 5", str(exc)) from exc
        try:
            sigma = match(spl, isog, form_classes, j_classes)
            break
        except LambdaInsufficient:
            nxt = nextprime(max(ells) if ells else 2)
            if nxt == p:
                nxt = nextprime(nxt)
            if nxt > max(cap, 3):
                raise
            ells = ells + [nxt]
            log.warning("p=%d: ambiguous match, growing Λ to %s", p, ells)

    entries = []
    for i, j in enumerate(js):
        k = sigma[i]
        orbit = [j] if is_rational(j) else [j, conjugate(j)]
        entries.append(Entry(j, orbit, forms[k], orders[k], j_classes[i], spl[k], isog[i]))
    return Correspondence(p, ells, entries, sigma, ss)
