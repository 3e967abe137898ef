"""Command-line front end: ``qtopo <subcommand> ...``.

Every subcommand prints one JSON report on standard output (or a plain
table with ``--pretty``).  Exit status is 0 when all requested checks pass,
1 when validation or a check fails, and 2 on usage errors.

File arguments accept a path or the name of a bundled fixture of the
matching kind (``--fsymbols fib`` or ``--fsymbols fib.json``).
"""
from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
import time
from pathlib import Path

import numpy as np

from . import _config
from .category import (
    DataError, InvariantError, dumps, modular_to_dict, parse_fsymbols, parse_fusion_ring, parse_modular_data,
    parse_nimrep, verify_pentagon,
)
from .fixtures import fixture_path

__all__ = ["main", "run", "build_parser"]


class CheckFailed(Exception):
    """A requested comparison did not hold; the report is still emitted."""


def _cplx(z) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


class Session:
    """Resolves inputs, records their digests and collects outputs."""

    def __init__(self, args):
        self.args = args
        self.inputs: dict[str, str] = {}
        self.outputs: dict = {}
        self.ok = True
        self.timings: dict[str, float] = {}

    def read(self, kind: str, ref: str, role: str) -> str:
        path = Path(ref)
        if not path.is_file():
            try:
                path = fixture_path(kind, Path(ref).stem if ref.endswith(".json") else ref)
            except KeyError:
                raise DataError(f"{role}: no file or bundled {kind} fixture named {ref!r}") from None
        data = path.read_bytes()
        self.inputs[role] = "sha256:" + hashlib.sha256(data).hexdigest()
        return data.decode("utf-8")

    def ring(self, ref):
        return parse_fusion_ring(self.read("categories", ref, "ring"))

    def fsymbols(self, ref):
        text = self.read("categories", ref, "fsymbols")
        return parse_fsymbols(text, parse_fusion_ring(text))

    def modular(self, ref):
        return parse_modular_data(self.read("modular", ref, "modular"))

    def triangulation(self, ref, role="tri"):
        from .triangulation import parse_triangulation
        return parse_triangulation(self.read("triangulations", ref, role), Path(ref).stem)

    def check(self, name: str, passed: bool) -> None:
        self.outputs.setdefault("checks", {})[name] = bool(passed)
        self.ok = self.ok and bool(passed)

    def timed(self, label, fn, *a, **kw):
        t0 = time.perf_counter()
        out = fn(*a, **kw)
        self.timings[label] = round((time.perf_counter() - t0) * 1e3, 3)
        return out


# --------------------------------------------------------------------------
# subcommands

def cmd_validate(s: Session) -> None:
    a = s.args
    done = False
    if a.ring:
        ring = s.ring(a.ring)
        s.outputs["ring"] = {"rank": ring.rank, "labels": list(ring.labels)}
        done = True
        if a.nimrep:
            nim = parse_nimrep(s.read("nimreps", a.nimrep, "nimrep"), ring)
            s.outputs["nimrep"] = {"module_rank": nim.module_rank, "dM": nim.dM.tolist()}
    if a.fsymbols:
        fs = s.fsymbols(a.fsymbols)
        rep = verify_pentagon(fs)
        s.outputs["pentagon"] = {"residual": rep.residual, "worst": rep.worst, "instances": rep.instances,
                                 "pass": rep.passed}
        s.check("pentagon", rep.passed)
        done = True
    if a.modular:
        md = s.modular(a.modular)
        s.outputs["modular"] = {"rank": md.rank, "D": md.D, "p_plus": _cplx(md.p_plus),
                                "p_minus": _cplx(md.p_minus)}
        done = True
    if a.tri:
        from .triangulation import first_homology
        tri = s.triangulation(a.tri)
        betti, torsion = first_homology(tri)
        s.outputs["triangulation"] = {"tets": tri.n_tet, "edges": tri.n_edges, "vertices": tri.n_vertices,
                                      "h1_betti": betti, "h1_torsion": list(torsion)}
        done = True
    if a.surface:
        from .state_spaces import parse_surface
        surf = parse_surface(s.read("surfaces", a.surface, "surface"))
        s.outputs["surface"] = {"genus": surf.genus(), "boundary_circles": surf.boundary_circles(),
                                "euler_characteristic": surf.euler_characteristic()}
        done = True
    if a.plumbing:
        from .surgery import parse_plumbing
        tree = parse_plumbing(s.read("plumbings", a.plumbing, "plumbing"))
        s.outputs["plumbing"] = {"vertices": tree.n_vertices, "signature": list(tree.signature)}
        done = True
    if not done:
        raise UsageError("validate needs at least one input")


def cmd_criteria(s: Session) -> None:
    from .criteria import check_module_positivity, check_positivity, omega_rank_one
    a = s.args
    ring = s.ring(a.ring)
    cap = a.cap or 4096
    if a.nimrep:
        nim = parse_nimrep(s.read("nimreps", a.nimrep, "nimrep"), ring)
        reports = s.timed("positivity", check_module_positivity, ring, nim, a.nmax, cap=cap)
        holds, res = omega_rank_one(ring, nim)
        s.outputs["omega_rank_one"] = {"holds": holds, "residual": res}
        s.check("omega_rank_one", holds)
    else:
        reports = s.timed("positivity", check_positivity, ring, a.nmax, cap=cap)
    s.outputs["reports"] = [r.to_dict() for r in reports]
    s.check("positivity", all(r.passed for r in reports))


def _center(s: Session, fs):
    from .tube import build_tube_algebra, decompose_center
    tube = s.timed("tube", build_tube_algebra, fs)
    return s.timed("center", decompose_center, tube, seed=s.args.seed)


def _center_report(cd) -> dict:
    out = {"rank": cd.rank, "labels": list(cd.labels), "dims": cd.dims.tolist(),
           "twists": [_cplx(t) for t in cd.twists], "induction": cd.induction.tolist(), "seed": cd.seed}
    if cd.md is not None:
        out["modular"] = modular_to_dict(cd.md)
        out["anomaly"] = _cplx(cd.md.anomaly)
    else:
        out["modular_error"] = cd.modular_error
    return out


def cmd_center(s: Session) -> None:
    from .tube import center_from_square, match_modular_data
    a = s.args
    cd = _center(s, s.fsymbols(a.fsymbols))
    s.outputs["center"] = _center_report(cd)
    s.check("anomaly_free", cd.md is not None and abs(cd.md.anomaly - 1) < 1e-6)
    if a.oracle:
        if not a.modular:
            raise UsageError("--oracle square needs --modular FILE")
        sq = center_from_square(s.modular(a.modular))
        perm = match_modular_data(cd.modular, sq)
        s.outputs["oracle"] = {"kind": "square", "permutation": perm}
        if perm is not None:
            S2 = sq.S[np.ix_(perm, perm)]
            s.outputs["oracle"]["max_S_difference"] = float(np.abs(S2 - cd.modular.S).max())
            s.outputs["oracle"]["max_T_difference"] = float(np.abs(sq.T[perm] - cd.modular.T).max())
        s.check("square_oracle", perm is not None)


def cmd_tv(s: Session) -> None:
    from .turaev_viro import DEFAULT_NODE_CAP, tv_invariant, vec_g_oracle
    a = s.args
    fs = s.fsymbols(a.fsymbols)
    results = []
    for k, ref in enumerate(a.tri):
        tri = s.triangulation(ref, f"tri[{k}]" if len(a.tri) > 1 else "tri")
        val = s.timed(f"tv[{tri.name}]", tv_invariant, fs, tri, node_cap=a.cap or DEFAULT_NODE_CAP,
                      workers=a.workers)
        entry = {"triangulation": tri.name, "value": _cplx(val)}
        if a.oracle:
            if not a.oracle.startswith("z"):
                raise UsageError("--oracle expects zN")
            n = int(a.oracle[1:])
            ref_val = vec_g_oracle(n, tri)
            entry["oracle"] = {"order": n, "value": str(ref_val), "difference": abs(val - float(ref_val))}
            s.check(f"vec_g_oracle[{tri.name}]", abs(val - float(ref_val)) < 1e-9)
        results.append(entry)
    s.outputs["tv"] = results if len(results) > 1 else results[0]


def cmd_rt(s: Session) -> None:
    from .surgery import parse_plumbing, rt_invariant
    a = s.args
    if a.modular:
        md = s.modular(a.modular)
    elif a.fsymbols:
        md = _center(s, s.fsymbols(a.fsymbols)).modular
    else:
        raise UsageError("rt needs --modular or --fsymbols")
    tree = parse_plumbing(s.read("plumbings", a.plumbing, "plumbing"))
    val = rt_invariant(md, tree, cap=a.cap or 10 ** 7)
    s.outputs["rt"] = {"value": _cplx(val), "signature": list(tree.signature)}


def cmd_dims(s: Session) -> None:
    from .state_spaces import dim_closed_surface, dim_state_space, parse_surface
    from .surgery import verlinde_dimension
    a = s.args
    if a.surface:
        if not a.ring:
            raise UsageError("--surface needs --ring")
        ring = s.ring(a.ring)
        surf = parse_surface(s.read("surfaces", a.surface, "surface"))
        s.outputs["dim"] = dim_state_space(ring, surf)
        s.outputs["surface"] = {"genus": surf.genus(), "boundary_circles": surf.boundary_circles()}
    elif a.genus is not None:
        if not a.modular:
            raise UsageError("--genus needs --modular")
        md = s.modular(a.modular)
        ver = verlinde_dimension(md, a.genus)
        if a.method == "verlinde":
            s.outputs["dim"] = ver
        else:
            val = dim_closed_surface(md, a.genus, check=False)
            s.outputs["dim"] = val
            s.outputs["verlinde"] = ver
            s.check("pants_equals_verlinde", val == ver)
        s.outputs["method"] = a.method
        s.outputs["genus"] = a.genus
    else:
        raise UsageError("dims needs --surface or --genus")


def cmd_indicators(s: Session) -> None:
    from .indicators import (
        TorusCurve, genus1_indicator, indicator_reference_oracle, word_for,
    )
    a = s.args
    fs = s.fsymbols(a.fsymbols)
    cd = _center(s, fs)
    V = fs.ring.index(a.object if not a.object.isdigit() else int(a.object))
    if a.center_vector:
        z = np.array([complex(*x) if isinstance(x, list) else complex(x)
                      for x in json.loads(Path(a.center_vector).read_text())])
        s.inputs["center_vector"] = "sha256:" + hashlib.sha256(Path(a.center_vector).read_bytes()).hexdigest()
    else:
        z = np.eye(cd.rank)[0]
    v = np.eye(fs.ring.rank)[V]
    rows = []
    for text in a.curve:
        curve = TorusCurve.parse(text)
        val = genus1_indicator(cd, curve, v, z)
        row = {"curve": [curve.m, curve.r], "value": _cplx(val),
               "word": word_for(curve) if curve.d == 1 else None,
               "path": "torus-representation" if curve.d == 1 else "tube-oracle",
               "normalization": 1.0}
        if a.oracle:
            ref = sum(z[X] * indicator_reference_oracle(cd, curve, V, X) for X in range(cd.rank))
            row["oracle"] = _cplx(ref)
            row["difference"] = abs(ref - val)
            s.check(f"oracle[{curve.m},{curve.r}]", abs(ref - val) < 1e-6)
        rows.append(row)
    s.outputs["object"] = fs.ring.labels[V]
    s.outputs["center_seed"] = cd.seed
    s.outputs["indicators"] = rows


def cmd_compare(s: Session) -> None:
    from .surgery import PlumbingTree, rt_invariant
    from .triangulation import lens_space
    from .turaev_viro import tv_invariant
    a = s.args
    fs = s.fsymbols(a.fsymbols)
    md = _center(s, fs).modular
    rows = []
    for p in a.lens:
        tv = s.timed(f"tv[L({p},1)]", tv_invariant, fs, lens_space(p, 1), workers=a.workers)
        rt = rt_invariant(md, PlumbingTree.lens(p))
        diff = abs(tv - rt)
        rows.append({"manifold": f"L({p},1)", "tv": _cplx(tv), "rt": _cplx(rt), "difference": diff})
        s.check(f"tv_equals_rt[L({p},1)]", diff < a.threshold)
    s.outputs["compare"] = rows


class UsageError(Exception):
    pass


COMMANDS = {
    "validate": cmd_validate, "criteria": cmd_criteria, "center": cmd_center, "tv": cmd_tv, "rt": cmd_rt,
    "dims": cmd_dims, "indicators": cmd_indicators, "compare": cmd_compare,
}


def _lens_list(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        if "-" in part:
            lo, hi = part.split("-")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="comparison tolerance (default 1e-9)")
    common.add_argument("--seed", type=int, default=20240229, help="seed for center block detection")
    common.add_argument("--pretty", action="store_true", help="print a plain table instead of JSON")
    common.add_argument("--cap", type=int, default=None, help="size cap for enumerations")
    common.add_argument("--timings", action="store_true", help="include wall-clock timings in the report")
    common.add_argument("--fixture", default=None, help="bundled category used when --ring/--fsymbols is omitted")

    parser = argparse.ArgumentParser(prog="qtopo", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="parse and validate input documents")
    for flag in ("--ring", "--fsymbols", "--modular", "--nimrep", "--tri", "--surface", "--plumbing"):
        p.add_argument(flag)

    p = sub.add_parser("criteria", parents=[common], help="positivity criteria")
    p.add_argument("--ring")
    p.add_argument("--nimrep")
    p.add_argument("--nmax", type=int, default=None)

    p = sub.add_parser("center", parents=[common], help="Drinfeld center from the tube algebra")
    p.add_argument("--fsymbols")
    p.add_argument("--oracle", choices=["square"])
    p.add_argument("--modular")

    p = sub.add_parser("tv", parents=[common], help="Turaev-Viro state sum")
    p.add_argument("--fsymbols")
    p.add_argument("--tri", nargs="+", required=True)
    p.add_argument("--oracle", help="zN: compare with |Hom(H1, Z_N)| / N")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("rt", parents=[common], help="surgery invariant of a plumbing tree")
    p.add_argument("--modular")
    p.add_argument("--fsymbols", help="use the center of this category instead of --modular")
    p.add_argument("--plumbing", required=True)

    p = sub.add_parser("dims", parents=[common], help="state-space dimensions")
    p.add_argument("--ring")
    p.add_argument("--surface")
    p.add_argument("--modular")
    p.add_argument("--genus", type=int)
    p.add_argument("--method", choices=["pants", "verlinde"], default="pants")

    p = sub.add_parser("indicators", parents=[common], help="genus-1 indicators")
    p.add_argument("--fsymbols")
    p.add_argument("--curve", nargs="+", required=True, help="m,r (several allowed)")
    p.add_argument("--object", required=True, help="label or index of V")
    p.add_argument("--center-vector", help="JSON list of center coefficients (default: vacuum)")
    p.add_argument("--oracle", action="store_true", help="also evaluate the tube-algebra oracle")

    p = sub.add_parser("compare", parents=[common], help="TV of C against RT of its center on L(p,1)")
    p.add_argument("--fsymbols")
    p.add_argument("--lens", type=_lens_list, required=True, help="p values, e.g. 3 or 1-5")
    p.add_argument("--threshold", type=float, default=1e-6)
    p.add_argument("--workers", type=int, default=1)
    return parser


def _pretty(report: dict) -> str:
    lines = []

    def walk(prefix, val):
        if isinstance(val, dict):
            for k in sorted(val):
                walk(f"{prefix}.{k}" if prefix else k, val[k])
        elif isinstance(val, list) and val and all(isinstance(v, dict) for v in val):
            for i, v in enumerate(val):
                walk(f"{prefix}[{i}]", v)
        else:
            lines.append(f"{prefix:<40} {json.dumps(val)}")

    walk("", report)
    return "\n".join(lines) + "\n"


def _json_safe(obj):
    if isinstance(obj, dict):
        return {str(k): _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    return obj


def run(argv: list[str] | None = None, stdout=None) -> int:
    """Parse ``argv``, run the subcommand and write the report; returns the exit status."""
    stdout = sys.stdout if stdout is None else stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    for attr in ("ring", "fsymbols"):
        if hasattr(args, attr) and getattr(args, attr) is None and args.fixture:
            setattr(args, attr, args.fixture)
    s = Session(args)
    report = {"command": args.command}
    status = 0
    old_tol = _config.get_tol()
    try:
        if args.tol is not None:
            _config.set_tol(args.tol)
        if args.command in ("criteria",) and not args.ring:
            raise UsageError("--ring (or --fixture) is required")
        if args.command in ("center", "tv", "indicators", "compare") and not args.fsymbols:
            raise UsageError("--fsymbols (or --fixture) is required")
        COMMANDS[args.command](s)
        status = 0 if s.ok else 1
        report["status"] = "pass" if s.ok else "fail"
    except UsageError as exc:
        print(f"qtopo {args.command}: {exc}", file=sys.stderr)
        return 2
    except InvariantError as exc:
        report["status"] = "error"
        report["error"] = {"invariant": exc.invariant, "message": str(exc),
                           "location": list(exc.location) if isinstance(exc.location, tuple) else exc.location}
        status = 1
    except (DataError, ValueError) as exc:
        report["status"] = "error"
        report["error"] = {"message": str(exc)}
        status = 1
    finally:
        _config.set_tol(old_tol)
    report["inputs"] = s.inputs
    report["outputs"] = s.outputs
    report["seed"] = args.seed
    if args.timings:
        report["timings_ms"] = s.timings
    report = _json_safe(report)
    stdout.write(_pretty(report) if args.pretty else dumps(report))
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
