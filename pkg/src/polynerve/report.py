"""Full invariant report for one polytope."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Union

from .betti import betti_of_polytope
from .buchstaber import s_bounds, s_search
from .complex import nerve_complex, polytopic_check
from .errors import CapExceeded
from .expr import PolytopeExpr, evaluate, parse_expression
from .invariants import (
    bayer_billera_check,
    check_corollary_fofKP,
    ds_inequality,
    euler_poincare_check,
    face_polynomial_2d,
    link_derivative_check,
    theorem_fofK_check,
)
from .complex import f_polynomial
from .polytope import IncidencePolytope, bits, flag_number

AUTO_BETTI_MAX_M = 14
# beyond this dimension only flag numbers f_S with |S| <= 2 are listed
FULL_FLAG_VECTOR_MAX_N = 4
LINK_DERIVATIVE_ORDERS = (1, 2, 3)


@dataclass
class ReportOptions:
    """Which sections to run.

    ``betti=None`` means automatic: run when ``m <= max_m``.
    """

    identities: bool = True
    polytopic: bool = True
    betti: Optional[bool] = None
    strict_torsion: bool = False
    max_m: int = AUTO_BETTI_MAX_M
    buchstaber: bool = True
    search: bool = False
    max_entry: int = 2
    seed: int = 0
    budget_ms: int = 5000


@dataclass
class Section:
    status: str  # "ok", "fail" or "skipped"
    data: Any = None
    reason: str = ""
    seconds: float = 0.0

    def to_json(self) -> dict:
        out = {"status": self.status, "seconds": round(self.seconds, 4)}
        if self.reason:
            out["reason"] = self.reason
        if self.data is not None:
            out["data"] = self.data
        return out


@dataclass
class Report:
    expression: str
    polytope: IncidencePolytope
    sections: Dict[str, Section] = field(default_factory=dict)
    text_blocks: Dict[str, str] = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        """0 iff every section that ran passed its verdicts."""
        return 1 if any(s.status == "fail" for s in self.sections.values()) else 0

    def to_json(self) -> dict:
        return {
            "expression": self.expression,
            "polytope": self.polytope.to_json(),
            "sections": {k: v.to_json() for k, v in self.sections.items()},
            "exit_code": self.exit_code,
        }

    def text(self) -> str:
        out = [f"polytope: {self.expression}"]
        for name, sec in self.sections.items():
            head = f"== {name} [{sec.status}"
            head += f": {sec.reason}]" if sec.reason else "]"
            out.append(f"{head}  ({sec.seconds:.3f} s)")
            if name in self.text_blocks:
                out.append(self.text_blocks[name])
        return "\n".join(out)


def _label(mask: int) -> str:
    return "{" + ",".join(str(i + 1) for i in bits(mask)) + "}"


def _summary(P: IncidencePolytope):
    L = P.lattice
    data: Dict[str, Any] = {"n": P.n, "m": P.m, "v": P.v, "f_vector": L.f_vector(), "simple": P.is_simple}
    longest = P.n if P.n <= FULL_FLAG_VECTOR_MAX_N else 2
    flags = {}
    for k in range(1, longest + 1):
        for S in itertools.combinations(range(P.n), k):
            flags[",".join(map(str, S))] = flag_number(L, S)
    data["flag_numbers"] = flags
    lines = [f"n = {P.n}, m = {P.m}, v = {P.v}, simple: {'yes' if P.is_simple else 'no'}",
             f"f-vector: {tuple(L.f_vector())}"]
    return "ok", data, "\n".join(lines)


def _nerve(P: IncidencePolytope):
    K = nerve_complex(P)
    fK = f_polynomial(K)
    F = face_polynomial_2d(P)
    data = {"complex": K.to_json(), "dim": K.dim, "f_polynomial": list(fK), "face_polynomial": F.to_json()}
    text = "\n".join([
        f"K_P: dim {K.dim}, maximal simplices " + " ".join(_label(s) for s in K.maximal),
        f"f_K(t) = {fK}",
        f"F_P(a, t) = {F}",
    ])
    return "ok", data, text


def _identities(P: IncidencePolytope):
    K = nerve_complex(P)
    cor = check_corollary_fofKP(P)
    ds = ds_inequality(P)
    bb = bayer_billera_check(P)
    eu = euler_poincare_check(P)
    th = theorem_fofK_check(K)
    links = {s: link_derivative_check(K, s) for s in LINK_DERIVATIVE_ORDERS}
    checks = {
        "corollary_fofKP": cor.all_equal,
        "ds_inequality": ds.ok,
        "bayer_billera": bb.equal,
        "euler_poincare": eu.equal,
        "face_simplex_expansion": th.equal,
        **{f"link_derivative_{s}": c.equal for s, c in links.items()},
    }
    data = {
        "corollary_fofKP": cor.to_json(),
        "ds_inequality": ds.to_json(),
        "bayer_billera": bb.to_json(),
        "euler_poincare": eu.to_json(),
        "face_simplex_expansion": th.to_json(),
        **{f"link_derivative_{s}": c.to_json() for s, c in links.items()},
        "verdicts": checks,
    }
    lines = [f"{k}: {'pass' if v else 'FAIL'}" for k, v in checks.items()]
    lines.append("ds_inequality by degree: " + " ".join(ds.verdicts))
    return ("ok" if all(checks.values()) else "fail"), data, "\n".join(lines)


def _polytopic(P: IncidencePolytope):
    rep = polytopic_check(nerve_complex(P))
    return ("ok" if rep.is_polytopic else "fail"), rep.to_json(), rep.text(one_based=True)


def _betti(P: IncidencePolytope, opts: ReportOptions):
    T = betti_of_polytope(P, strict_torsion=opts.strict_torsion, max_m=opts.max_m)
    data = {**T.to_json(), "stats": T.stats.to_json()}
    text = T.text()
    if T.torsion_omegas:
        text += "\ntorsion in full subcomplexes on: " + " ".join(_label(w) for w in T.torsion_omegas)
    st = T.stats
    text += f"\npruned {st.pruned}/{st.subsets} subsets ({100 * st.pruned_fraction:.1f}%)"
    return "ok", data, text


def _buchstaber(P: IncidencePolytope, opts: ReportOptions):
    K = nerve_complex(P)
    res = s_bounds(K)
    if opts.search:
        res = s_search(K, max_entry=opts.max_entry, budget_ms=opts.budget_ms, seed=opts.seed, start=res)
    return "ok", res.to_json(), f"gamma = {res.gamma}\n{res.text()}"


def run_report(E: Union[PolytopeExpr, str], options: Optional[ReportOptions] = None) -> Report:
    """Evaluate ``E`` and run the enabled sections, timing each one."""
    opts = options or ReportOptions()
    if isinstance(E, str):
        E = parse_expression(E)
    P = evaluate(E)
    rep = Report(str(E), P)

    def stage(name: str, fn: Callable[[], tuple]):
        t0 = time.perf_counter()
        try:
            status, data, text = fn()
        except CapExceeded as exc:
            rep.sections[name] = Section("skipped", None, str(exc), time.perf_counter() - t0)
            return
        rep.sections[name] = Section(status, data, "", time.perf_counter() - t0)
        rep.text_blocks[name] = text

    def skip(name: str, reason: str):
        rep.sections[name] = Section("skipped", None, reason)

    stage("polytope", lambda: _summary(P))
    stage("nerve", lambda: _nerve(P))
    if opts.identities:
        stage("identities", lambda: _identities(P))
    else:
        skip("identities", "not requested")
    if opts.polytopic:
        stage("polytopic", lambda: _polytopic(P))
    else:
        skip("polytopic", "not requested")
    if opts.betti is False:
        skip("betti", "not requested")
    elif P.m > opts.max_m:
        skip("betti", f"m = {P.m} exceeds the Betti limit {opts.max_m}")
    else:
        stage("betti", lambda: _betti(P, opts))
    if opts.buchstaber:
        stage("buchstaber", lambda: _buchstaber(P, opts))
    else:
        skip("buchstaber", "not requested")
    return rep
