"""Command line entry point: ``stabcomb <verb> ...``.

Exit status is 0 when every certificate passes, 1 when a check fails and
2 on bad usage (unknown names, malformed parameters, tripped size guards).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import re
import sys
from fractions import Fraction

from .combinatorics import KINDS, UnknownKind, distribution
from .config import SizeGuardExceeded
from .exactpoly import Poly
from .families import BadParams, MissingSeed, UnknownFamily, family, family_names, triangle
from .suites import SUITES, Certificate, exit_status, oracle_kind_params, run_suite, run_tasks
from .verdict import _plain

USAGE_ERRORS = (BadParams, MissingSeed, UnknownFamily, UnknownKind, SizeGuardExceeded, KeyError, ValueError)


def _scalar(text: str):
    text = text.strip()
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return Fraction(text)
    except ValueError:
        return text


def parse_params(text: str | None) -> dict:
    """``"r=2,q=1:1/2:3"`` -> ``{"r": 2, "q": [1, Fraction(1, 2), 3]}``."""
    out: dict = {}
    if not text:
        return out
    for item in text.split(","):
        if not item.strip():
            continue
        if "=" not in item:
            raise ValueError(f"parameter {item!r} is not of the form key=value")
        k, v = item.split("=", 1)
        out[k.strip()] = [_scalar(t) for t in v.split(":")] if ":" in v else _scalar(v)
    return out


_TERM = re.compile(r"([+-]?)\s*([0-9/]*)\s*(\*?\s*x(?:\s*\^\s*(\d+))?)?")


def parse_poly(text: str) -> Poly:
    """Accept a coefficient list ``"-1,1"`` or an expression ``"x^2 - 3x + 1/2"``."""
    if "x" not in text:
        return Poly.parse(text)
    s = text.replace(" ", "").replace("**", "^")
    coeffs: dict[int, Fraction] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial {text!r}")
        sign, num, xpart, power = m.groups()
        if not num and not xpart:
            raise ValueError(f"cannot parse polynomial {text!r}")
        c = Fraction(num) if num else Fraction(1)
        if sign == "-":
            c = -c
        k = (int(power) if power else 1) if xpart else 0
        coeffs[k] = coeffs.get(k, 0) + c
        pos = m.end()
    top = max(coeffs)
    return Poly([coeffs.get(i, 0) for i in range(top + 1)])


# ---------------------------------------------------------------------------
# output


def _num_den(c) -> str:
    f = Fraction(c)
    return f"{f.numerator}/{f.denominator}"


def emit_table(rows: list[tuple[int, list]], fmt: str, name: str, params: dict, out=None) -> None:
    """rows are (index, coefficients); JSON keys are sorted, CSV cells are num/den."""
    out = out or sys.stdout
    if fmt == "json":
        payload = {"family": name, "params": _plain(params),
                   "rows": [{"n": n, "coefficients": [_num_den(c) for c in cs]} for n, cs in rows]}
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        w = csv.writer(out, lineterminator="\n")
        width = max((len(cs) for _, cs in rows), default=0)
        w.writerow(["n"] + [f"c{k}" for k in range(width)])
        for n, cs in rows:
            w.writerow([n] + [_num_den(c) for c in cs])


def emit_certificates(certs: list[Certificate], fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        for c in certs:
            out.write(c.to_json() + "\n")
    else:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["family", "params", "n", "property", "verdict", "conjecture", "witness"])
        for c in certs:
            d = c.as_dict()
            w.writerow([d["family"], json.dumps(d["params"], sort_keys=True), d["n"], d["property"], d["verdict"],
                        d["conjecture"], json.dumps(d["witness"], sort_keys=True)])


# ---------------------------------------------------------------------------
# verbs


def cmd_family(a) -> int:
    t = family(a.name, parse_params(a.params), a.n)
    emit_table([(n, list(p.coeffs)) for n, p in t.items()], a.format, a.name, t.params)
    return 0


def cmd_triangle(a) -> int:
    t = triangle(a.name, parse_params(a.params), a.n)
    emit_table([(n, list(t.row(n))) for n in t.indices], a.format, a.name, t.params)
    return 0


def _targets(a):
    if not a.family:
        return None
    return [(a.family, parse_params(a.params))]


def cmd_check(a) -> int:
    certs = run_suite(a.suite, _targets(a), a.n, a.jobs, a.poly)
    emit_certificates(certs, a.format)
    return exit_status(certs)


def cmd_verify(a) -> int:
    params = parse_params(a.params)
    name = a.identity
    order = a.order or 10
    if name == "jcf":
        task = (a.family, params, None, None, order)
    elif name == "egf":
        task = (a.family, params, order)
    elif name == "xd":
        task = (a.family or "eulerian", a.n or 6, a.order)
    elif name == "convolution":
        task = (int(params.get("d1", 1)), int(params.get("d2", 1)), a.n or 8)
    elif name == "alt-desc-convolution":
        task = (a.n or 8,)
    elif name == "counting":
        if a.n is not None:
            params["n"] = a.n
        task = (a.family, params, order)
    elif name == "gamma-basis":
        task = (a.family, a.n or 8, bool(params.get("literal", 0)))
    else:
        raise KeyError(f"unknown identity {name}")
    if name in ("jcf", "egf", "counting", "gamma-basis") and not a.family:
        raise KeyError(f"identity {name} needs --family")
    certs = run_tasks([("identity", name, task)])
    emit_certificates(certs, a.format)
    return exit_status(certs)


def cmd_oracle(a) -> int:
    params = parse_params(a.params)
    n = 4 if a.n is None else a.n
    if a.compare:
        fam_params = parse_params(a.compare_params)
        kp = oracle_kind_params(a.compare, fam_params, params, n)
        q = fam_params.get("q") if a.compare == "colored_q_eulerian" else None
        got = distribution(a.kind, kp, a.stat, q=q, jobs=a.jobs)
        want = family(a.compare, fam_params, n)[n]
        ok = got == want
        cert = Certificate(a.compare, fam_params, n, f"oracle:{a.kind}:{a.stat}", "pass" if ok else "fail",
                           {} if ok else {"family": want, "oracle": got})
        emit_certificates([cert], a.format)
        return exit_status([cert])
    kp = dict(params)
    kp.setdefault("n", n)
    got = distribution(a.kind, kp, a.stat, jobs=a.jobs)
    emit_table([(n, list(got.coeffs))], a.format, f"{a.kind}:{a.stat}", kp)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stabcomb", description="Exact polynomial families and their stability checks.")
    p.add_argument("--guard", type=int, help="maximum number of enumerated objects")
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp, need_n=True):
        sp.add_argument("--n", type=int, default=None if not need_n else 6)
        sp.add_argument("--params", default=None, help="k=v,... (lists as a:b:c)")
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--jobs", type=int, default=1)

    sp = sub.add_parser("family", help="print a family table")
    sp.add_argument("name", choices=family_names(), metavar="NAME")
    common(sp)
    sp.set_defaults(fn=cmd_family)

    sp = sub.add_parser("triangle", help="print a coefficient triangle")
    sp.add_argument("name")
    common(sp)
    sp.set_defaults(fn=cmd_triangle)

    sp = sub.add_parser("check", help="run a property suite")
    sp.add_argument("--suite", required=True, choices=SUITES)
    sp.add_argument("--family", default=None)
    sp.add_argument("--poly", default=None, help="polynomial for the hurwitz suite")
    common(sp, need_n=False)
    sp.set_defaults(fn=cmd_check)

    sp = sub.add_parser("verify", help="check a generating-function identity")
    sp.add_argument("--identity", required=True,
                    choices=("jcf", "egf", "xd", "convolution", "alt-desc-convolution", "counting", "gamma-basis"))
    sp.add_argument("--family", default=None)
    sp.add_argument("--order", type=int, default=None)
    common(sp, need_n=False)
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("oracle", help="brute-force a statistic distribution")
    sp.add_argument("--kind", required=True, choices=sorted(KINDS))
    sp.add_argument("--stat", required=True)
    sp.add_argument("--compare", default=None, help="family to compare against")
    sp.add_argument("--compare-params", default=None)
    common(sp, need_n=False)
    sp.set_defaults(fn=cmd_oracle)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    if getattr(a, "poly", None) is not None:
        try:
            a.poly = ",".join(str(c) for c in parse_poly(a.poly).coeffs)
        except ValueError as e:
            print(f"error: {e}", file=sys.stderr)
            return 2
    saved = os.environ.get("STABCOMB_GUARD")
    if a.guard is not None:
        # worker processes inherit the environment, so the cap travels with them
        os.environ["STABCOMB_GUARD"] = str(a.guard)
    try:
        return a.fn(a)
    except USAGE_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    finally:
        if a.guard is not None:
            if saved is None:
                os.environ.pop("STABCOMB_GUARD", None)
            else:
                os.environ["STABCOMB_GUARD"] = saved


if __name__ == "__main__":
    sys.exit(main())
