"""Command-line front end.

Usage:
  so3five verify [--seed N] [--json]
  so3five charpoly --dim {3,5} [--json]
  so3five check NAME | --chi N --sigma M [--catalog PATH] [--json]
  so3five upsilon [--json]

Exit codes: 0 all checks pass (or a verdict was delivered), 1 an identity
check failed, 2 usage or lookup error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import chern_weil, obstruction, representations, upsilon
from .errors import LookupFailure, So3FiveError
from .field import SQRT3
from .poly import MultiPoly
from .representations import (
    RationalQuaternion,
    Representation,
    make_rho3,
    make_rho5,
    rho5_of_rotation,
    rotation_from_quaternion,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

DEFAULT_SEED = 0
DEFAULT_SAMPLES = 25


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "status": "pass" if self.passed else "fail", "detail": self.detail}


@dataclass
class RunReport:
    command: str
    checks: list[Check] = field(default_factory=list)
    payload: dict = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return EXIT_OK if all(c.passed for c in self.checks) else EXIT_FAILED

    def run(self, name: str, fn: Callable[[], tuple[bool, str]]) -> Check:
        try:
            passed, detail = fn()
        except (So3FiveError, ArithmeticError, ValueError, AssertionError) as exc:
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        check = Check(name, passed, detail)
        self.checks.append(check)
        return check

    def to_dict(self) -> dict:
        out = {"command": self.command}
        out.update(self.payload)
        out["checks"] = [c.to_dict() for c in self.checks]
        out["exit_code"] = self.exit_code
        return out

    def render_text(self) -> str:
        lines = [f"so3five {self.command}"]
        width = max((len(c.name) for c in self.checks), default=0)
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            lines.append(f"  {status}  {c.name.ljust(width)}  {c.detail}".rstrip())
        passed = sum(c.passed for c in self.checks)
        lines.append(f"{passed}/{len(self.checks)} checks passed")
        return "\n".join(lines) + "\n"


def sample_quaternions(seed: int, count: int, bound: int = 9) -> list[RationalQuaternion]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        q = RationalQuaternion(*(rng.randint(-bound, bound) for _ in range(4)))
        if q.norm_squared():
            out.append(q)
    return out


def _commutation(rep: Representation) -> tuple[bool, str]:
    bad = [name for name, r in rep.commutation_residuals().items() if not r.is_zero()]
    return not bad, "all three cyclic relations" if not bad else "fails: " + ", ".join(bad)


def run_verify(seed: int = DEFAULT_SEED, samples: int = DEFAULT_SAMPLES, rho5: Representation | None = None) -> RunReport:
    """Full identity suite.  ``rho5`` replaces the built-in generators (fault injection)."""
    report = RunReport("verify", payload={"seed": seed})
    rho3 = make_rho3()
    rho5 = rho5 or make_rho5()
    r2 = chern_weil.r_squared()

    report.run("commutation rho3", lambda: _commutation(rho3))
    report.run("commutation rho5", lambda: _commutation(rho5))
    report.run("antisymmetry", lambda: (rho3.is_antisymmetric() and rho5.is_antisymmetric(), "rho3 and rho5 generators"))

    state: dict = {}

    def basis_check():
        state["basis"] = representations.derive_m5_basis(rho3, rho5)
        return True, f"sign vector {state['basis'].signs}"

    report.run("m5 basis compatibility", basis_check)

    def charpoly3():
        rep = chern_weil.char_poly(rho3)
        lam = MultiPoly.var(chern_weil.CURVATURE_ENV, "lam")
        want = lam**3 + lam * r2
        return rep.char_poly == want, str(rep.char_poly)

    def charpoly5():
        rep = chern_weil.char_poly(rho5)
        ok = rep.lam_coefficient(3) == r2 * 5 and rep.lam_coefficient(4).is_zero()
        return ok, f"lam^3 coefficient {rep.lam_coefficient(3)}"

    report.run("charpoly rho3", charpoly3)
    report.run("charpoly rho5", charpoly5)

    def ratio():
        k = chern_weil.pontryagin_ratio(rho5, rho3)
        return k == 5, f"p1(rho5) = {k} p1(rho3)"

    report.run("pontryagin ratio", ratio)

    def build():
        basis = state.get("basis")
        if basis is None:
            return False, "no basis"
        c = upsilon.solve_normalization(basis)
        state["upsilon"] = upsilon.build_upsilon(basis, c)
        return True, f"c = {c}"

    report.run("upsilon normalization", build)

    def need_upsilon():
        if "upsilon" not in state:
            raise ValueError("tensor unavailable")
        return state["upsilon"]

    def symmetry():
        t = need_upsilon()
        yv = upsilon.upsilon_endomorphism(t, upsilon.symbolic_vector())
        return t.is_totally_symmetric() and yv.is_symmetric(), "all index permutations; Y_v symmetric"

    def trace_free():
        t = need_upsilon()
        yv = upsilon.upsilon_endomorphism(t, upsilon.symbolic_vector())
        return t.is_trace_free() and yv.trace().is_zero(), "tr(Y_v) = 0"

    def identity():
        t = need_upsilon()
        res = upsilon.verify_defining_identity(t)
        nonzero = sum(not r.is_zero() for r in res)
        return nonzero == 0, "Y_v^2 v = |v|^2 v" if not nonzero else f"{nonzero} nonzero residual components"

    def metric():
        t = need_upsilon()
        return upsilon.recover_metric(t).is_identity(), "recovered Gram matrix is I5"

    report.run("upsilon total symmetry", symmetry)
    report.run("upsilon trace-free", trace_free)
    report.run("defining identity", identity)
    report.run("metric recovery", metric)

    quats = sample_quaternions(seed, samples)

    def equivariance():
        t = need_upsilon()
        basis = state["basis"]
        bad = [q for q in quats if not upsilon.verify_equivariance(t, rotation_from_quaternion(q), basis)]
        return not bad, f"{len(quats) - len(bad)}/{len(quats)} rotations"

    def homomorphism():
        basis = state.get("basis")
        if basis is None:
            return False, "no basis"
        pairs = list(zip(quats[::2], quats[1::2]))
        bad = 0
        for q1, q2 in pairs:
            h1, h2 = rotation_from_quaternion(q1), rotation_from_quaternion(q2)
            lhs = rho5_of_rotation(h1 @ h2, basis)
            if lhs != rho5_of_rotation(h1, basis) @ rho5_of_rotation(h2, basis):
                bad += 1
        return not bad, f"{len(pairs) - bad}/{len(pairs)} pairs"

    report.run("upsilon equivariance", equivariance)
    report.run("rho5 homomorphism", homomorphism)
    return report


def run_charpoly(dim: int) -> RunReport:
    rep = {3: make_rho3, 5: make_rho5}[dim]()
    cp = chern_weil.char_poly(rep)
    report = RunReport("charpoly", payload={"report": cp.to_dict()})
    r2 = chern_weil.r_squared()
    if dim == 3:
        lam = MultiPoly.var(chern_weil.CURVATURE_ENV, "lam")
        report.run("charpoly rho3", lambda: (cp.char_poly == lam**3 + lam * r2, "lam^3 + lam*(r1^2 + r2^2 + r3^2)"))
    else:
        report.run(
            "charpoly rho5",
            lambda: (cp.lam_coefficient(3) == r2 * 5 and cp.lam_coefficient(4).is_zero(),
                     "lam^3 coefficient 5*(r1^2 + r2^2 + r3^2)"),
        )
    report.run("pontryagin ratio", lambda: (cp.ratio_to_base == (1 if dim == 3 else 5), f"ratio {cp.ratio_to_base}"))
    return report


def run_check(surface: obstruction.SurfaceInvariants) -> RunReport:
    verdict = obstruction.irreducible_exists(surface)
    report = RunReport("check", payload={"verdict": verdict.to_dict()})
    consistent = obstruction.theorem_criterion(obstruction.product_bundle_data(surface)) == verdict.irreducible_exists
    report.run("criterion consistency", lambda: (consistent, "bundle criterion agrees with (chi, sigma) test"))
    return report


def run_upsilon() -> RunReport:
    t = upsilon.build_upsilon()
    comps = [{"index": [i + 1, j + 1, k + 1], "value": str(v)} for (i, j, k), v in t.nonzero_components()]
    report = RunReport("upsilon", payload={"normalization": str(t.normalization), "components": comps})
    report.run("total symmetry", lambda: (t.is_totally_symmetric(), ""))
    report.run("trace-free", lambda: (t.is_trace_free(), ""))
    report.run("defining identity", lambda: (upsilon.defining_identity_holds(t), ""))
    return report


def _parse_corruption(text: str) -> tuple[int, int, int]:
    gen, i, j = (int(x) for x in text.split(","))
    return gen, i, j


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")

    parser = argparse.ArgumentParser(prog="so3five", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="run the full identity suite")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="number of random rotations")
    p.add_argument("--corrupt-rho5", type=_parse_corruption, default=None, help=argparse.SUPPRESS)

    p = sub.add_parser("charpoly", parents=[common], help="characteristic polynomial of the curvature")
    p.add_argument("--dim", type=int, choices=(3, 5), required=True)

    p = sub.add_parser("check", parents=[common], help="decide existence of structures on S x S^1")
    p.add_argument("name", nargs="?")
    p.add_argument("--chi", type=int)
    p.add_argument("--sigma", type=int)
    p.add_argument("--catalog", default=None)

    sub.add_parser("upsilon", parents=[common], help="dump the components of the cubic tensor")
    return parser


def _emit(report: RunReport, as_json: bool, extra_text: str = "") -> int:
    if as_json:
        sys.stdout.write(json.dumps(report.to_dict(), indent=2) + "\n")
    else:
        sys.stdout.write(extra_text + report.render_text())
    return report.exit_code


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    as_json = getattr(args, "json", False)

    if args.command == "verify":
        rho5 = None
        if args.corrupt_rho5 is not None:
            gen, i, j = args.corrupt_rho5
            base = make_rho5()
            rho5 = base.with_entry(gen, i, j, base[gen].scalar(i, j) + SQRT3)
        return _emit(run_verify(args.seed, args.samples, rho5), as_json)

    if args.command == "charpoly":
        report = run_charpoly(args.dim)
        cp = report.payload["report"]
        text = "".join(f"{k}: {v}\n" for k, v in cp.items())
        return _emit(report, as_json, text)

    if args.command == "check":
        if args.name is not None and (args.chi is not None or args.sigma is not None):
            parser.error("give either a surface name or --chi/--sigma, not both")
        if args.name is None:
            if args.chi is None or args.sigma is None:
                parser.error("check needs a surface name or both --chi and --sigma")
            surface = obstruction.SurfaceInvariants(f"chi={args.chi},sigma={args.sigma}", args.chi, args.sigma)
        else:
            try:
                surface = obstruction.lookup(args.name, obstruction.catalog(args.catalog))
            except LookupFailure as exc:
                sys.stderr.write(f"so3five: {exc.args[0]}\n")
                return EXIT_USAGE
            except (OSError, ValueError) as exc:
                sys.stderr.write(f"so3five: cannot read catalog: {exc}\n")
                return EXIT_USAGE
        report = run_check(surface)
        v = report.payload["verdict"]
        text = (
            f"surface {v['surface']}: chi={v['euler']} sigma={v['signature']}\n"
            f"  standard SO(3) structure on S x S^1:    {'yes' if v['standard_exists'] else 'no'}\n"
            f"  irreducible SO(3) structure on S x S^1: {'yes' if v['irreducible_exists'] else 'no'}\n"
        )
        for r in v["reasons"]:
            text += f"    {r['criterion']}: {r['value']}\n"
        return _emit(report, as_json, text)

    if args.command == "upsilon":
        report = run_upsilon()
        t_text = f"# normalization c = {report.payload['normalization']}\n"
        t_text += "".join(f"{' '.join(map(str, c['index']))} : {c['value']}\n" for c in report.payload["components"])
        return _emit(report, as_json, t_text)

    parser.error(f"unknown command {args.command}")
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
