"""Property suites: batches of independent checks that emit certificates.

A task is a plain tuple so it can be shipped to worker processes.  Results
come back in task order, so output does not depend on the worker count.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import product
from typing import Any

from .combinatorics import distribution
from .exactpoly import Poly, as_rational, even_odd_split, reciprocal
from .families import BadParams, family, family_offset, family_spec, pattern_parts
from .hurwitz import hb_even_odd_test, is_hurwitz_stable, rhp_root_count
from .identities import (
    verify_alt_desc_convolution,
    verify_convolution,
    verify_counting_identity,
    verify_egf_crossmul,
    verify_gamma_basis,
    verify_jcf,
    verify_xd_identity,
)
from .properties import (
    criterion_check,
    dec_ab_equivalence_check,
    gamma_vector,
    is_alternatingly_increasing,
    q_log_convexity,
    semi_gamma,
    strong_q_log_convexity,
    turan,
)
from .realroots import interlacing_relation, isolate_roots, is_real_rooted, real_root_count
from .verdict import _plain

SUITES = (
    "real-rooted",
    "hurwitz",
    "turan-hurwitz",
    "interlacing-chain",
    "gamma",
    "semi-gamma",
    "alt-increasing",
    "qlogconvex",
    "strong-qlogconvex",
    "identities",
    "oracle-compare",
    "criteria-soundness",
    "conjecture-Tnr",
)


@dataclass(frozen=True)
class Certificate:
    family: str
    params: dict
    n: Any
    property: str
    verdict: str
    witness: dict = field(default_factory=dict)
    conjecture: bool = False

    def __post_init__(self):
        if self.verdict not in ("pass", "fail"):
            raise ValueError("verdict must be 'pass' or 'fail'")
        if self.verdict == "fail" and not self.witness:
            raise ValueError("a failing certificate needs a witness")

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def as_dict(self) -> dict:
        d = asdict(self)
        d["params"] = _plain(self.params)
        d["witness"] = _plain(self.witness)
        d["n"] = _plain(self.n)
        return d

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "Certificate":
        return cls(d["family"], d["params"], d["n"], d["property"], d["verdict"], d.get("witness", {}),
                   d.get("conjecture", False))


def _cert(fam, params, n, prop, ok, witness=None, conjecture=False) -> Certificate:
    witness = dict(witness or {})
    if not ok and not witness:
        witness = {"reason": "check failed"}
    return Certificate(fam, dict(params), n, prop, "pass" if ok else "fail", witness, conjecture)


# ---------------------------------------------------------------------------
# default targets

TURAN_SHIFT = {"bell": lambda p: -as_rational(p.get("b", 0)), "swr_rows": lambda p: -as_rational(p.get("lam", 1))}

TURAN_TARGETS = [
    ("eulerian", {}),
    ("bell", {}),
    ("bell", {"a": 2, "b": 1, "c0": 1, "c1": 1}),
    ("alt_runs_A", {}),
    ("updown", {}),
    ("peaks_M", {}),
    ("alt_runs_B", {}),
    ("gen_eulerian_rows", {"a1": 1, "a2": 1, "b1": 2, "b2": 1, "d": 1, "lam": 1}),
    ("swr_rows", {"a1": 1, "a2": 1, "b1": 1, "b2": 1, "lam": 1}),
    ("stirling_peaks_interior", {"r": 2}),
    ("stirling_peaks_interior", {"r": 3}),
    ("stirling_peaks_left", {"r": 2}),
    ("stirling_peaks_left", {"r": 3}),
]


def alt_degree(fam: str, params: dict, n: int) -> int:
    """The n of the I_n decomposition used for each family entry."""
    if fam in ("colored_plus", "stirling_peaks_interior"):
        return n - 1
    if fam == "signed_multiset":
        parts = pattern_parts(params, n)
        if all(v == 1 for v in parts):
            raise BadParams("with every part equal to 1 the polynomial has degree s, not s - 1")
        return sum(parts) - 1
    if fam in ("colored_q_eulerian", "stirling_peaks_left", "colored_eulerian"):
        return n
    raise KeyError(fam)


# oracle pairs: family, family params, kind, kind params (minus n), statistic
ORACLES = [
    ("eulerian", {}, "S_n", {}, "des"),
    ("r_eulerian", {"r": 2}, "S_n", {"r": 2}, "exc_r"),
    ("r_eulerian", {"r": 3}, "S_n", {"r": 3}, "exc_r"),
    ("alt_runs_A", {}, "S_n", {}, "alt_runs"),
    ("updown", {}, "S_n", {}, "las"),
    ("peaks_W", {}, "S_n", {}, "ipk"),
    ("peaks_Wtilde", {}, "S_n", {}, "lpk"),
    ("alt_desc_A", {}, "S_n", {}, "altdes_A"),
    ("alt_desc_B", {}, "B_n", {}, "altdes_B"),
    ("alt_runs_B", {}, "B_n_up", {}, "alt_runs_B"),
    ("colored_eulerian", {"r": 2}, "Z_r_wr_S_n", {"r": 2}, "des"),
    ("colored_plus", {"r": 2}, "Z_r_plus", {"r": 2}, "des"),
    ("colored_minus", {"r": 2}, "Z_r_minus", {"r": 2}, "des"),
    ("kary_ascent", {"k": 2}, "k_ary", {"k": 2}, "asc_word"),
    ("stirling_peaks_interior", {"r": 2}, "r_stirling", {"r": 2}, "ipk_r"),
    ("stirling_peaks_left", {"r": 2}, "r_stirling", {"r": 2}, "lpk_r"),
    ("quasi_stirling", {}, "quasi_stirling", {}, "des"),
]


def oracle_kind_params(fam: str, params: dict, kind_params: dict, n: int) -> dict:
    kp = dict(kind_params)
    if fam == "signed_multiset":
        kp["parts"] = pattern_parts(params, n)
    else:
        kp["n"] = n
    return kp


# ---------------------------------------------------------------------------
# task runners


def _hurwitz_witness(p: Poly) -> dict:
    rep = rhp_root_count(p)
    w = {"rhp": rep.as_dict()}
    w["real_roots"] = isolate_roots(p).as_list()
    return w


def _task(task: tuple) -> list[Certificate]:
    kind = task[0]
    return _RUNNERS[kind](*task[1:])


def _t_real_rooted(fam, params, n):
    p = family(fam, params, n)[n]
    ok = is_real_rooted(p)
    w = {} if ok else {"real_roots": real_root_count(p), "degree": p.degree}
    return [_cert(fam, params, n, "real-rooted", ok, w)]


def _t_hurwitz(fam, params, n, conjecture=False, poly=None):
    p = Poly.parse(poly) if poly is not None else family(fam, params, n)[n]
    ok = is_hurwitz_stable(p)
    certs = [_cert(fam, params, n, "hurwitz", ok, {} if ok else _hurwitz_witness(p), conjecture)]
    fE, fO = even_odd_split(p)
    if not fE.is_zero() and not fO.is_zero():
        agree = hb_even_odd_test(p) == ok
        certs.append(_cert(fam, params, n, "hb-agreement", agree, {} if agree else {"hurwitz": ok}, conjecture))
    return certs


def _t_turan(fam, params, n):
    t = family(fam, params, n + 2)
    shift = TURAN_SHIFT.get(fam, lambda p: 0)(t.params)
    q = turan(t, n, shift)
    ok = is_hurwitz_stable(q)
    w = {"shift": shift}
    if not ok:
        w.update(_hurwitz_witness(q))
    return [_cert(fam, params, n, "turan-hurwitz", ok, w)]


def _t_chain(fam, params, n):
    t = family(fam, params, n + 1)
    v = interlacing_relation(t[n], t[n + 1])
    return [_cert(fam, params, n, "interlacing-chain", v.g_ll_f, {} if v.g_ll_f else {"relation": v.relation})]


def _t_gamma(fam, params, n, center):
    p = family(fam, params, n)[n]
    g = gamma_vector(p, center)
    return [_cert(fam, params, n, "gamma-positive", g.positive, {"gamma": list(g.gamma)})]


def _t_semi_gamma(fam, params, n):
    p = family(fam, params, n)[n]
    s = semi_gamma(p)
    w = {"nu": s.nu, "stripped_power": s.stripped_power, "g": s.g}
    return [_cert(fam, params, n, "semi-gamma-positive", s.positive, w)]


def _t_alt_incr(fam, params, n):
    p = family(fam, params, n)[n]
    d = alt_degree(fam, params, n)
    ok = is_alternatingly_increasing(p, d)
    out = [_cert(fam, params, n, "alt-increasing", ok, {} if ok else {"coefficients": p, "degree": d})]
    v = dec_ab_equivalence_check(p, d)
    ok2 = v.passed and v.details.get("all_true", False)
    out.append(_cert(fam, params, n, "dec-ab-equivalence", ok2, {} if ok2 else v.as_dict()))
    inter = interlacing_relation(reciprocal(p, d), p).g_ll_f
    out.append(_cert(fam, params, n, "In-interlacing", inter, {} if inter else {"degree": d}))
    return out


def _t_qlog(fam, params, N, strong):
    t = family(fam, params, N)
    v = (strong_q_log_convexity if strong else q_log_convexity)(t)
    return [_cert(fam, params, N, "strong-qlogconvex" if strong else "qlogconvex", v.passed,
                  {} if v.passed else v.as_dict())]


def _t_oracle(fam, params, kind, kind_params, stat, n):
    p = family(fam, params, n)[n]
    kp = oracle_kind_params(fam, params, kind_params, n)
    q = params.get("q") if fam == "colored_q_eulerian" else None
    d = distribution(kind, kp, stat, q=q)
    ok = p == d
    return [_cert(fam, params, n, f"oracle:{kind}:{stat}", ok, {} if ok else {"family": p, "oracle": d})]


def _t_identity(name, args):
    fn = {
        "jcf": verify_jcf,
        "egf": verify_egf_crossmul,
        "xd": verify_xd_identity,
        "convolution": verify_convolution,
        "alt-desc-convolution": verify_alt_desc_convolution,
        "counting": verify_counting_identity,
        "gamma-basis": verify_gamma_basis,
    }[name]
    v = fn(*args)
    label = args[0] if args and isinstance(args[0], str) else name
    return [_cert(str(label), {"args": list(args[1:]) if isinstance(args[0], str) else list(args)}, None,
                  f"identity:{name}", v.passed, {} if v.passed else v.as_dict())]


def _t_soundness(criterion, fam, params, n, conclusion):
    if criterion in ("cor_swr", "cor_gen_eulerian", "cor_wang_yeh", "cor_bell_turan", "prop_oper_A"):
        hyp = criterion_check(criterion, dict(params), n)
    else:
        hyp = criterion_check(criterion, family_spec(fam, params), n)
    if not hyp:
        return [_cert(fam, params, n, f"soundness:{criterion}", True, {"hypothesis": False})]
    if conclusion == "turan-hurwitz":
        ok = _t_turan(fam, params, n)[0].passed
    elif conclusion == "real-rooted":
        ok = is_real_rooted(family(fam, params, n + 1)[n + 1])
    elif conclusion == "hurwitz":
        ok = is_hurwitz_stable(family(fam, params, n + 1)[n + 1])
    else:
        raise KeyError(conclusion)
    return [_cert(fam, params, n, f"soundness:{criterion}", ok, {"hypothesis": True} if ok else {"conclusion": conclusion})]


_RUNNERS = {
    "real-rooted": _t_real_rooted,
    "hurwitz": _t_hurwitz,
    "turan": _t_turan,
    "chain": _t_chain,
    "gamma": _t_gamma,
    "semi-gamma": _t_semi_gamma,
    "alt-incr": _t_alt_incr,
    "qlog": _t_qlog,
    "oracle": _t_oracle,
    "identity": _t_identity,
    "soundness": _t_soundness,
}


# ---------------------------------------------------------------------------
# suite -> tasks


def _grid_swr():
    vals = [0, 1, 2]
    out = []
    for a1 in vals:
        for a2 in vals:
            for b1 in vals:
                for b2 in vals:
                    if a1 * (b1 + b2) >= a2 * b1 and b1 + b2 > 0 and a2 > 0:
                        out.append({"a1": a1, "a2": a2, "b1": b1, "b2": b2, "lam": Fraction(1, 2) if (a1 + b2) % 2 else 1})
    return out


def _grid_gen_eulerian():
    # a1, b1, lam > 0 and a2, b2, d >= 0 with a2 + b2 > 0
    out = []
    for a1, a2, b1, b2, d, lam in product((1, 2), (0, 1), (1, 2, 3), (0, 1), (0, 1, 2), (1, Fraction(1, 2))):
        if a2 + b2 > 0:
            out.append({"a1": a1, "a2": a2, "b1": b1, "b2": b2, "d": d, "lam": lam})
    return out


def suite_tasks(suite: str, targets: list[tuple[str, dict]] | None = None, n: int | None = None,
                poly: str | None = None) -> list[tuple]:
    if suite not in SUITES:
        raise KeyError(suite)
    N = n
    tasks: list[tuple] = []
    if suite == "real-rooted":
        targets = targets or [("eulerian", {}), ("r_eulerian", {"r": 2}), ("bell", {}), ("andre", {}), ("flower", {})] + [
            ("swr_rows", p) for p in _grid_swr()] + [("gen_eulerian_rows", p) for p in _grid_gen_eulerian()]
        N = N or 10
        for fam, p in targets:
            start = _start(fam, p)
            tasks += [("real-rooted", fam, p, k) for k in range(start, N + 1)]
    elif suite == "hurwitz":
        if poly is not None:
            return [("hurwitz", "poly", {"poly": poly}, 0, False, poly)]
        targets = targets or [("stirling_runs", {}), ("alt_desc_A", {}), ("alt_desc_B", {})]
        N = N or 10
        for fam, p in targets:
            tasks += [("hurwitz", fam, p, k) for k in range(_start(fam, p), N + 1)]
    elif suite == "turan-hurwitz":
        targets = targets or TURAN_TARGETS
        N = N or 8
        for fam, p in targets:
            tasks += [("turan", fam, p, k) for k in range(_start(fam, p), N + 1)]
    elif suite == "interlacing-chain":
        targets = targets or [("eulerian", {}), ("bell", {}), ("swr_rows", {}), ("r_eulerian", {"r": 2})]
        N = N or 7
        for fam, p in targets:
            tasks += [("chain", fam, p, k) for k in range(_start(fam, p), N + 1)]
    elif suite == "gamma":
        targets = targets or [("eulerian", {})]
        N = N or 8
        for fam, p in targets:
            for k in range(max(_start(fam, p), 1), N + 1):
                deg = family(fam, p, k)[k].degree
                tasks.append(("gamma", fam, p, k, deg))
    elif suite == "semi-gamma":
        targets = targets or [("stirling_runs", {}), ("alt_desc_A", {}), ("alt_desc_B", {})]
        N = N or 10
        for fam, p in targets:
            tasks += [("semi-gamma", fam, p, k) for k in range(_start(fam, p), N + 1)]
    elif suite == "alt-increasing":
        targets = targets or [("colored_plus", {"r": r}) for r in (2, 3, 4)] + [
            ("signed_multiset", {"pattern": [2]}), ("colored_q_eulerian", {"r": 2, "q": [1]}),
            ("stirling_peaks_interior", {"r": 2}), ("stirling_peaks_left", {"r": 2})]
        N = N or 5
        for fam, p in targets:
            tasks += [("alt-incr", fam, p, k) for k in range(max(_start(fam, p), 1), N + 1)]
    elif suite in ("qlogconvex", "strong-qlogconvex"):
        targets = targets or [("eulerian", {}), ("alt_desc_A", {}), ("alt_desc_B", {})]
        N = N or 6
        tasks += [("qlog", fam, p, N, suite == "strong-qlogconvex") for fam, p in targets]
    elif suite == "oracle-compare":
        N = N or 6
        pairs = ORACLES
        if targets:
            names = {f for f, _ in targets}
            pairs = [o for o in ORACLES if o[0] in names]
            extra = [(f, p) for f, p in targets if f not in {o[0] for o in ORACLES}]
            if extra:
                raise KeyError(f"no oracle known for {extra[0][0]}")
        for fam, p, kind, kp, stat in pairs:
            top = min(N, 5) if kind in ("quasi_stirling", "r_stirling", "B_n", "B_n_up") or kind.startswith("Z_r") else N
            tasks += [("oracle", fam, p, kind, kp, stat, k) for k in range(max(_start(fam, p), 1), top + 1)]
    elif suite == "identities":
        order = N or 10
        tasks += [("identity", "jcf", (f, p, None, None, order)) for f, p in
                  [("alt_desc_A", {}), ("alt_desc_B", {}), ("s_triangle_rows", {})] + [("derivative_Q", {"delta": d}) for d in (1, 2, 3)]]
        tasks += [("identity", "egf", (f, p, order)) for f, p in
                  [("alt_desc_A", {}), ("alt_desc_B", {})] + [("derivative_Q", {"delta": d}) for d in (1, 2, 3)]]
        tasks += [("identity", "xd", (w, 6, 17)) for w in ("eulerian", "stirling_runs")]
        tasks += [("identity", "convolution", (a, b, 8)) for a in (1, 2, 3) for b in (1, 2, 3)]
        tasks += [("identity", "alt-desc-convolution", (8,))]
        tasks += [("identity", "gamma-basis", (w, 8)) for w in ("alt_desc_A", "alt_desc_B")]
        for r in (2, 3):
            for k in range(1, 5):
                for f in ("colored_eulerian", "colored_plus", "colored_minus"):
                    tasks.append(("identity", "counting", (f, {"r": r, "n": k}, 10)))
        tasks += [("identity", "counting", ("kary_ascent", {"k": k, "n": m}, 10)) for k in (2, 3) for m in range(0, 5)]
        tasks += [("identity", "counting", ("signed_multiset", {"pattern": [2, 1], "n": m}, 10)) for m in range(0, 4)]
        tasks += [("identity", "counting", ("colored_q_eulerian", {"r": 3, "q": [2, Fraction(1, 2), 3], "n": m}, 10))
                  for m in range(0, 4)]
    elif suite == "criteria-soundness":
        N = N or 6
        for p in _grid_swr():
            tasks += [("soundness", "cor_swr", "swr_rows", p, k, "turan-hurwitz") for k in range(0, N + 1)]
        for p in _grid_gen_eulerian():
            tasks += [("soundness", "cor_gen_eulerian", "gen_eulerian_rows", p, k, "turan-hurwitz") for k in range(0, N + 1)]
        for a1, a2, a3, b1, b2, b3 in [(0, 1, 0, 0, 0, 1), (1, 0, -1, 0, 0, 1), (1, 1, 0, 1, 0, 1), (0, 2, 1, 1, 1, 0)]:
            p = {"a1": a1, "a2": a2, "a3": a3, "b1": b1, "b2": b2, "b3": b3}
            tasks += [("soundness", "cor_wang_yeh", "rec_A", p, k, "real-rooted") for k in range(0, N + 1)]
        tasks += [("soundness", "thm_RS_1", f, {}, k, "real-rooted") for f in ("eulerian", "bell", "flower")
                  for k in range(1, N + 1)]
    elif suite == "conjecture-Tnr":
        N = N or 10
        for r in (2, 3, 4):
            tasks += [("hurwitz", "stirling_peaks_T", {"r": r}, k, True) for k in range(0, N + 1)]
    return tasks


def _start(fam: str, params: dict) -> int:
    return family_offset(fam, params)


def run_tasks(tasks: list[tuple], jobs: int = 1) -> list[Certificate]:
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_task, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        results = [_task(t) for t in tasks]
    # map preserves submission order, so output is independent of the pool size
    return [c for batch in results for c in batch]


def run_suite(suite: str, targets=None, n: int | None = None, jobs: int = 1, poly: str | None = None) -> list[Certificate]:
    return run_tasks(suite_tasks(suite, targets, n, poly), jobs)


def exit_status(certs: list[Certificate]) -> int:
    """0 when every non-conjecture certificate passes, else 1."""
    return 0 if all(c.passed or c.conjecture for c in certs) else 1
