"""Machine-readable analysis reports (the CLI's JSON contract)."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .fibration import FibrationAnalysis, check_corollary, has_no_common_zero
from .polyalg import Polynomial
from .parsing import print_polynomial
from .symlinalg import pluecker_relation_values

STATUSES = ("pass", "fail", "skip", "heuristic-pass")


@dataclass
class Check:
    name: str
    status: str
    details: str = ""

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown check status {self.status!r}")

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "details": self.details}


@dataclass
class FibrationReport:
    input: str
    n: int
    k: int
    a1_ok: bool
    a2_ok: bool
    kernel_basis: list[str] = field(default_factory=list)
    reduced_pluecker: dict[str, str] = field(default_factory=dict)
    singular_generators: list[str] = field(default_factory=list)
    checks: list[Check] = field(default_factory=list)

    @property
    def failed(self) -> bool:
        return any(c.status == "fail" for c in self.checks)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "input": self.input,
            "n": self.n,
            "k": self.k,
            "a1_ok": self.a1_ok,
            "a2_ok": self.a2_ok,
            "kernel_basis": list(self.kernel_basis),
            "reduced_pluecker": dict(self.reduced_pluecker),
            "singular_generators": list(self.singular_generators),
            "checks": [c.to_dict() for c in self.checks],
        }

    @classmethod
    def from_dict(cls, data: dict) -> FibrationReport:
        return cls(
            input=data["input"],
            n=int(data["n"]),
            k=int(data["k"]),
            a1_ok=bool(data["a1_ok"]),
            a2_ok=bool(data["a2_ok"]),
            kernel_basis=list(data["kernel_basis"]),
            reduced_pluecker=dict(data["reduced_pluecker"]),
            singular_generators=list(data["singular_generators"]),
            checks=[Check(c["name"], c["status"], c.get("details", "")) for c in data["checks"]],
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> FibrationReport:
        return cls.from_dict(json.loads(text))

    def render(self) -> str:
        lines = [
            f"input: {self.input}",
            f"n = {self.n}, k = {self.k}, A1 {'ok' if self.a1_ok else 'FAILED'}, "
            f"A2 {'ok' if self.a2_ok else 'FAILED'}",
        ]
        if self.kernel_basis:
            lines.append("kernel basis:")
            lines.extend(f"  {v}" for v in self.kernel_basis)
        if self.reduced_pluecker:
            lines.append("reduced Pluecker coordinates:")
            lines.extend(f"  <{key}>: {val}" for key, val in self.reduced_pluecker.items())
        if self.singular_generators:
            lines.append("singular locus generators:")
            lines.extend(f"  {g}" for g in self.singular_generators)
        lines.append("checks:")
        for c in self.checks:
            suffix = f" -- {c.details}" if c.details else ""
            lines.append(f"  [{c.status}] {c.name}{suffix}")
        return "\n".join(lines)


def format_vector(vec: Sequence[Polynomial], names: Sequence[str]) -> str:
    return "(" + ", ".join(print_polynomial(p, names) for p in vec) + ")"


def pluecker_key(t: Sequence[int]) -> str:
    return ",".join(str(i) for i in t)


def standard_checks(
    analysis: FibrationAnalysis, names: Sequence[str], expect_a2: bool = True
) -> list[Check]:
    """Checks every analysis gets; ``expect_a2=False`` marks a known non-example."""
    n, k = analysis.n, analysis.k
    checks = [
        Check("A1", "pass" if analysis.a1_ok else "fail", f"generic rank k={k}, n={n}")
    ]
    if not analysis.a1_ok:
        why = "k=0: constant map" if k == 0 else "k=n: level sets are points"
        checks[0].details += f" ({why})"
        for name in ("A2", "kernel_identity", "pluecker_relations", "corollary"):
            checks.append(Check(name, "skip", "requires A1"))
        return checks
    if analysis.a2_ok:
        details = "level sets contain xi + ker DG(xi)"
    else:
        extra = [f"t{j + 1}" for j in range(analysis.a2_witness.nvars - n)]
        details = "nonzero defect: " + print_polynomial(analysis.a2_witness, [*names, *extra])
        if not expect_a2:
            details += " (expected)"
    checks.append(Check("A2", "pass" if analysis.a2_ok == expect_a2 else "fail", details))
    assert analysis.kernel is not None and analysis.pluecker is not None
    ok = all(not any(analysis.jacobian.apply(v)) for v in analysis.kernel.vectors)
    checks.append(Check("kernel_identity", "pass" if ok else "fail", "DG * w == 0 for every basis vector"))
    pv = analysis.pluecker
    rel = pluecker_relation_values(pv.coordinates, pv.subspace_dim, pv.n)
    ok = all(not r for r in rel)
    checks.append(Check("pluecker_relations", "pass" if ok else "fail", f"{len(rel)} quadratic relations"))
    if n <= 3 or k <= 2:
        ok = check_corollary(n, k, analysis.singular_generators)
        checks.append(
            Check("corollary", "pass" if ok else "fail", "n <= 3 or k <= 2 forces an empty singular set")
        )
    else:
        checks.append(Check("corollary", "skip", "vacuous: n > 3 and k > 2"))
    empty = has_no_common_zero(analysis.singular_generators)
    if empty is True:
        checks.append(Check("singular_locus", "pass", "empty: kernel map extends everywhere"))
    elif empty is False:
        checks.append(Check("singular_locus", "skip", "candidate locus is nonempty"))
    else:
        checks.append(Check("singular_locus", "skip", "candidate locus not decided by cheap tests"))
    return checks


def build_report(
    analysis: FibrationAnalysis,
    names: Sequence[str],
    input_desc: str,
    extra_checks: Sequence[Check] = (),
    expect_a2: bool = True,
) -> FibrationReport:
    kernel = [format_vector(v, names) for v in analysis.kernel.vectors] if analysis.kernel else []
    pl = {}
    if analysis.pluecker is not None:
        pl = {
            pluecker_key(t): print_polynomial(p, names)
            for t, p in analysis.pluecker.coordinates.items()
        }
    gens = [print_polynomial(g, names) for g in analysis.singular_generators]
    return FibrationReport(
        input=input_desc,
        n=analysis.n,
        k=analysis.k,
        a1_ok=analysis.a1_ok,
        a2_ok=analysis.a2_ok,
        kernel_basis=kernel,
        reduced_pluecker=pl,
        singular_generators=gens,
        checks=standard_checks(analysis, names, expect_a2) + list(extra_checks),
    )
