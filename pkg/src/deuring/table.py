"""Output records for a computed correspondence: JSON and a text facsimile of the table."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .matcher import Correspondence
from .supersingular_curves import j_to_json, render_j
from .ternary_forms import TernaryForm

SCHEMA = 1

SMALL_PRIME_NOTE = (
    "the quaternion algebra ramified at {p} and infinity has class number one, "
    "so there is a single supersingular j-invariant and a single order type"
)


@dataclass
class EntryRecord:
    j: object  # int, or {"a", "b", "eps"} for a +- b sqrt(eps)
    j_text: str
    tau_class: str
    form: TernaryForm
    relations: list
    products: dict
    fingerprint: list  # sorted [trace, norm] pairs

    def to_json(self) -> dict:
        return {
            "j": self.j,
            "j_text": self.j_text,
            "tau_class": self.tau_class,
            "form": self.form.to_json(),
            "order": {"basis": ["1", "e1", "e2", "e3"], "relations": self.relations,
                      "products": self.products},
            "fingerprint": self.fingerprint,
        }

    @classmethod
    def from_json(cls, d: dict) -> "EntryRecord":
        return cls(
            j=d["j"], j_text=d["j_text"], tau_class=d["tau_class"],
            form=TernaryForm.from_json(d["form"]),
            relations=list(d["order"]["relations"]),
            products={k: list(v) for k, v in d["order"]["products"].items()},
            fingerprint=[list(x) for x in d["fingerprint"]],
        )


@dataclass
class OutputRecord:
    p: int
    ells: list
    entries: list = field(default_factory=list)
    note: Optional[str] = None

    @classmethod
    def from_correspondence(cls, corr: Correspondence) -> "OutputRecord":
        entries = []
        for e in corr.entries:
            entries.append(EntryRecord(
                j=j_to_json(e.j),
                j_text=render_j(e.j),
                tau_class=e.tau_class.label,
                form=e.form.with_tau(),
                relations=e.order.relations(),
                products=e.order.to_json()["products"],
                fingerprint=[list(x) for x in sorted(e.spl, key=lambda tn: (tn[1], tn[0]))],
            ))
        return cls(corr.p, list(corr.ells), entries)

    @classmethod
    def trivial(cls, p: int) -> "OutputRecord":
        return cls(p, [], [], SMALL_PRIME_NOTE.format(p=p))

    def to_json(self) -> dict:
        d = {"schema": SCHEMA, "p": self.p, "lambda": self.ells, "type_number": len(self.entries),
             "entries": [e.to_json() for e in self.entries]}
        if self.note:
            d["note"] = self.note
        return d

    @classmethod
    def from_json(cls, d: dict) -> "OutputRecord":
        if d.get("schema") != SCHEMA:
            raise ValueError(f"unsupported schema {d.get('schema')!r}")
        return cls(d["p"], list(d["lambda"]), [EntryRecord.from_json(e) for e in d["entries"]],
                   d.get("note"))


CELL = 14


def _special_column(rec: OutputRecord, label: str) -> Optional[EntryRecord]:
    for e in rec.entries:
        if e.tau_class == label:
            return e
    return None


def _cell(e: Optional[EntryRecord]) -> list[str]:
    if e is None:
        return ["⋆".center(CELL), "", "", ""]
    return [e.j_text.center(CELL)] + [row.center(CELL) for row in e.form.seeber_rows()]


def render_table(rec: OutputRecord, emit_orders: bool = False, emit_fingerprints: bool = False) -> str:
    """Text version of one table row: generic j columns, then the 1728 and 0 columns."""
    lines = [f"p = {rec.p}"]
    if rec.note:
        lines.append(f"  {rec.note}")
        return "\n".join(lines) + "\n"
    generic = [e for e in rec.entries if e.tau_class in ("rational_j", "conjugate_pair")]
    cols = [_cell(e) for e in generic]
    cols.append(_cell(_special_column(rec, "j1728")))
    cols.append(_cell(_special_column(rec, "zero_j")))
    header = "".join(h.center(CELL) for h in ["0≠j≠1728"] * len(generic) + ["1728", "0"])
    lines.append(header.rstrip())
    for r in range(4):
        lines.append("".join((c[r] if c[r] else "").ljust(CELL) for c in cols).rstrip())
    lines.append(f"  Λ = {{{', '.join(map(str, rec.ells))}}}")
    for e in rec.entries:
        if emit_orders:
            lines.append(f"  order for j = {e.j_text}, form {e.form}:")
            lines.extend(f"    {rel}" for rel in e.relations)
        if emit_fingerprints:
            pairs = ", ".join(f"({t},{n})" for t, n in e.fingerprint)
            lines.append(f"  fingerprint j = {e.j_text}: {{{pairs}}}")
    return "\n".join(lines) + "\n"
