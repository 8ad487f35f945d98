"""Command-line front end.

Exit codes: 0 success, 1 invalid input object, 2 resource cap exceeded,
3 usage error (bad flags, missing files).
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .algebra import DIALECTS, FieldSpec, associated_algebra, export_cas
from .errors import DomainError, ResourceLimitError
from .fields import field_make
from .homs import enumerate_homs, format_hom, induced_map_fibers, parse_map, point_count_profile
from .matroid import Matroid, builtin, parse_matroid
from .pasture import CATALOG_TEXT, PasturePresentation, catalog, load_presentation
from .tropical import DEFAULT_CAP, trop_complex, trop_fiber_dim
from .valuated import (check_tropical_pluecker, dressian, hyperplane_fit, lineality_space,
                       parse_pluecker, regular_subdivision, rigidity, subdivision_is_matroidal)

EXIT_OK, EXIT_DOMAIN, EXIT_RESOURCE, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _read(path: str, what: str = "file") -> str:
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"no such {what}: {path}")
    return p.read_text()


def _cells_only(report: str) -> str:
    return report.split("\n", 1)[1]


def resolve_pasture_arg(spec: str, force_file: bool = False) -> PasturePresentation:
    if not force_file:
        if spec in CATALOG_TEXT:
            return catalog(spec)
        if spec.strip().startswith("F1pm"):
            return load_presentation(spec)
    return load_presentation(_read(spec, "catalog pasture or file"), Path(spec).stem)


def resolve_matroid_arg(spec: str, force_file: bool = False) -> Matroid:
    if not force_file:
        M = builtin(spec)
        if M is not None:
            return M
    return parse_matroid(_read(spec, "built-in matroid or file"))


def _finite_field(text: str):
    spec = FieldSpec.parse(text)
    if spec.q == 0:
        raise DomainError("a finite field order is required here, not QQ")
    return field_make(spec.q)


def _hom_text(P, F, h) -> str:
    return format_hom(P, F, h) if P.ngens else "(no generators)"


# ------------------------------------------------------------- subcommands


def cmd_pasture_homs(a) -> str:
    P = resolve_pasture_arg(a.pasture, a.file)
    F = _finite_field(a.field)
    homs = enumerate_homs(P, F)
    if len(homs) == 1:
        return f"1 hom: {_hom_text(P, F, homs[0])}\n"
    return "".join([f"{len(homs)} homs\n"] + [_hom_text(P, F, h) + "\n" for h in homs])


def cmd_pasture_trop(a) -> str:
    P = resolve_pasture_arg(a.pasture, a.file)
    C = trop_complex(P, a.cap)
    return f"dim {C.dim}, cells {len(C.cells)}\n" + _cells_only(C.report())


def cmd_pasture_profile(a) -> str:
    P = resolve_pasture_arg(a.pasture, a.file)
    try:
        qs = [int(q) for q in a.fields.split(",") if q.strip()]
    except ValueError:
        raise UsageError(f"--fields expects comma-separated integers, got {a.fields!r}") from None
    if not qs:
        raise UsageError("--fields is empty")
    for q in qs:
        field_make(q)  # validates q
    return point_count_profile(P, qs).report()


def cmd_pasture_fibers(a) -> str:
    f = parse_map(_read(a.map))
    if a.tropical:
        if a.point is None:
            raise UsageError("--tropical needs --point")
        try:
            x = [Fraction(v.strip()) for v in a.point.split(",")]
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"--point expects comma-separated rationals, got {a.point!r}") from None
        return f"tropical fiber dim {trop_fiber_dim(f, x, cap=a.cap)}\n"
    if a.field is None:
        raise UsageError("fibers needs --field or --tropical")
    F = _finite_field(a.field)
    part = induced_map_fibers(f, F, a.depth)
    S, T = f.source, f.target
    nonempty = sum(1 for v in part.fibers.values() if v)
    lines = [f"map {f.name}: {S.name} -> {T.name} over GF({F.q}), "
             f"{len(part.fibers)} source homs, {nonempty} nonempty fibers"]
    for h, fiber in part.fibers.items():
        lines.append(f"over {_hom_text(S, F, h)}: size {len(fiber)}")
        lines.extend("  " + _hom_text(T, F, g) for g in fiber)
    return "\n".join(lines) + "\n"


def cmd_matroid_rigid(a) -> str:
    M = resolve_matroid_arg(a.matroid, a.file)
    return rigidity(M, a.cap).report()


def cmd_matroid_dressian(a) -> str:
    M = resolve_matroid_arg(a.matroid, a.file)
    D = dressian(M, a.cap)
    _, ldim = lineality_space(M)
    return f"dressian dim {D.dim}, cells {len(D.cells)}, lineality dim {ldim}\n" + _cells_only(D.report())


def cmd_matroid_subdivide(a) -> str:
    M = resolve_matroid_arg(a.matroid, a.file)
    D = parse_pluecker(_read(a.pluecker), M)
    sub = regular_subdivision(D)
    ok, _ = subdivision_is_matroidal(D, sub)
    w = hyperplane_fit(D)
    out = sub.report(M.ground_size)
    out += f"pluecker {'valid' if check_tropical_pluecker(D) else 'invalid'}\n"
    out += f"matroidal {'yes' if ok else 'no'}\n"
    out += f"witness {w.format() if w else 'none'}\n"
    return out


def cmd_band_algebra(a) -> str:
    P = resolve_pasture_arg(a.pasture, a.file)
    return export_cas(associated_algebra(P, FieldSpec.parse(a.field)), a.dialect)


# ----------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    root = _Parser(prog="tropmat", description="Pastures, tropical homs and valuated matroids.")
    groups = root.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def common(p, cap=False):
        p.add_argument("--file", action="store_true", help="treat names as file paths")
        if cap:
            p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="candidate-cell cap")

    pasture = groups.add_parser("pasture").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = pasture.add_parser("homs", help="list Hom(P, F_q)")
    p.add_argument("--pasture", required=True)
    p.add_argument("--field", required=True)
    common(p)
    p.set_defaults(run=cmd_pasture_homs)

    p = pasture.add_parser("trop", help="tropical hom space")
    p.add_argument("--pasture", required=True)
    common(p, cap=True)
    p.set_defaults(run=cmd_pasture_trop)

    p = pasture.add_parser("profile", help="point counts and growth exponent")
    p.add_argument("--pasture", required=True)
    p.add_argument("--fields", required=True, help="comma-separated field orders")
    common(p)
    p.set_defaults(run=cmd_pasture_profile)

    p = pasture.add_parser("fibers", help="fibers of the map induced by a pasture map")
    p.add_argument("--map", required=True)
    p.add_argument("--field")
    p.add_argument("--tropical", action="store_true")
    p.add_argument("--point")
    p.add_argument("--depth", type=int, default=4, help="fusion search depth")
    common(p, cap=True)
    p.set_defaults(run=cmd_pasture_fibers)

    matroid = groups.add_parser("matroid").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    for name, fn in (("rigid", cmd_matroid_rigid), ("dressian", cmd_matroid_dressian)):
        p = matroid.add_parser(name)
        p.add_argument("--matroid", required=True)
        common(p, cap=True)
        p.set_defaults(run=fn)
    p = matroid.add_parser("subdivide")
    p.add_argument("--matroid", required=True)
    p.add_argument("--pluecker", required=True)
    common(p)
    p.set_defaults(run=cmd_matroid_subdivide)

    band = groups.add_parser("band").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = band.add_parser("algebra", help="export the associated algebra")
    p.add_argument("--pasture", required=True)
    p.add_argument("--field", default="QQ")
    p.add_argument("--dialect", default="generic", choices=DIALECTS)
    common(p)
    p.set_defaults(run=cmd_band_algebra)
    return root


def run(argv, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        if not argv:
            raise UsageError("tropmat: a subcommand is required")
        args = build_parser().parse_args(argv)
        out.write(args.run(args))
        return EXIT_OK
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except ResourceLimitError as exc:
        err.write(f"resource limit: {exc}\n")
        return EXIT_RESOURCE
    except DomainError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(run(sys.argv[1:]))
