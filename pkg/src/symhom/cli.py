"""Command line front end: ``symhom COMMAND ...``.

Every subcommand prints one JSON report (schema ``symhom-report/1``) to
standard output, or to ``--out FILE``.  The envelope records the engine
version, the command, its mathematical parameters, and a content hash of
all of these; the ``result`` object holds the computed values.  Exit
status: 0 for a delivered report, 2 for invalid input, 3 for a
resource-guard abort.

Reports are cached under their input hash (directory from
``--cache-dir``, else ``$SYMHOM_CACHE_DIR``, else ``~/.cache/symhom``).
A cache hit replays the stored report byte for byte; a corrupt entry is
ignored with a warning and recomputed.  ``--no-cache`` disables both
lookup and storage, as does ``--export-matrices`` (exports need the
freshly built complex).  For a fixed engine version the report bytes
depend only on the mathematical parameters — not on caching, ``--out``
or ``--threads``.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from pathlib import Path

from . import __version__
from .algebras import (AlgebraSpec, group_algebra_z2, matrix_algebra_m2,
                       scalar_algebra, truncated_polynomial_algebra)
from .deltas import Permutation, epi_count
from .errors import (DomainError, ResourceGuardError, TruncationError,
                     ValidationError)
from .homology import format_poincare, homology
from .hs import (build_collapsed_complex, build_hc_low_complex,
                 build_low_complex, build_truncated_epi_complex,
                 comparison_map, hs_degree, hs_low, induced_h0_map)
from .linalg import rank, solve_in_span
from .reps import (decompose, homology_character,
                   induced_character_from_cyclic, partition_string,
                   top_homology_character)
from .rings import QQ, ZZ, parse_ring
from .symcomplex import b_cycle, box_product, build_complex, sigma_act

SCHEMA = "symhom-report/1"

#: Reference Poincare polynomials of the block-tensor complexes, used by
#: ``verify-paper`` (degrees 0..6 of the regression corpus).
REFERENCE_POINCARE = {
    0: "1",
    1: "t",
    2: "t+2t^2",
    3: "7t^2+6t^3",
    4: "43t^3+24t^4",
    5: "t^3+272t^4+120t^5",
    6: "36t^4+1847t^5+720t^6",
}


# -- report plumbing ---------------------------------------------------------

def _canonical(obj) -> bytes:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()


def _cache_dir(args) -> Path:
    if args.cache_dir:
        return Path(args.cache_dir)
    env = os.environ.get("SYMHOM_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "symhom"


def _cache_load(path: Path, expected_hash: str):
    try:
        data = path.read_bytes()
    except OSError:
        return None
    try:
        report = json.loads(data.decode("utf-8"))
        intact = (isinstance(report, dict)
                  and report.get("schema") == SCHEMA
                  and report.get("input_hash") == expected_hash)
    except (ValueError, UnicodeDecodeError):
        intact = False
    if not intact:
        print(f"symhom: warning: ignoring corrupt cache entry {path}; "
              f"recomputing", file=sys.stderr)
        return None
    return data.decode("utf-8")


def _cache_store(path: Path, text: str) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(text)
        tmp.replace(path)
    except OSError as exc:
        print(f"symhom: warning: could not write cache entry {path}: {exc}",
              file=sys.stderr)


def _write_report(args, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _run(args, command: str, params: dict, compute) -> int:
    """Dispatch one job: cache lookup, compute, emit, cache store."""
    params = dict(sorted(params.items()))
    input_hash = hashlib.sha256(_canonical(
        {"engine_version": __version__, "command": command,
         "parameters": params})).hexdigest()
    exporting = bool(getattr(args, "export_matrices", None))
    use_cache = not args.no_cache and not exporting
    cache_file = _cache_dir(args) / f"{input_hash}.json" if use_cache else None
    if cache_file is not None:
        cached = _cache_load(cache_file, input_hash)
        if cached is not None:
            print(f"symhom: cache hit {cache_file}", file=sys.stderr)
            _write_report(args, cached)
            return 0
    outcome = compute()
    result, extras = outcome if isinstance(outcome, tuple) else (outcome, {})
    report = {"schema": SCHEMA, "engine_version": __version__,
              "command": command, "parameters": params,
              "input_hash": input_hash, "result": result, **extras}
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if cache_file is not None:
        _cache_store(cache_file, text)
    _write_report(args, text)
    return 0


def _export_complex(C, directory: str) -> list:
    """Write every boundary matrix (and a manifest) as audit files."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    names = []
    for i in sorted(C.boundaries):
        name = f"d{i}.txt"
        (out / name).write_text(C.boundary_matrix(i).to_text())
        names.append(name)
    manifest = {"ring": str(C.ring),
                "ranks": {str(i): C.rank(i) for i in sorted(C.ranks)},
                "boundaries": names}
    (out / "manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return names + ["manifest.json"]


# -- shared argument handling ------------------------------------------------

def _parse_weight(text):
    """Parse ``--weight``: a single integer or a comma-separated window.

    Returns ``(value_for_engine, value_for_report)``.
    """
    if text is None:
        return None, None
    try:
        values = [int(token) for token in text.split(",")]
    except ValueError:
        raise DomainError(
            f"invalid weight {text!r}; expected an integer or a "
            f"comma-separated list of integers") from None
    if any(v < 0 for v in values):
        raise DomainError("weights must be nonnegative")
    window = sorted(set(values))
    if len(window) == 1:
        return window[0], window[0]
    return tuple(window), window


def _load_algebra(path_text: str, ring):
    """Read and validate an algebra description file.

    Returns ``(spec, sha256_of_file, name)``; any defect (unreadable
    file, bad JSON, failed algebra axiom) raises ``ValidationError``
    with a diagnostic naming the offending axiom.
    """
    path = Path(path_text)
    try:
        raw = path.read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read algebra file {path}: {exc}") \
            from None
    try:
        data = json.loads(raw)
    except ValueError as exc:
        raise ValidationError(
            f"algebra file {path} is not valid JSON: {exc}") from None
    digest = hashlib.sha256(raw.encode("utf-8")).hexdigest()
    name = path.stem
    spec = AlgebraSpec.from_json_dict(data, ring=ring, name=name)
    return spec, digest, name


def _homology_json(result) -> dict:
    return {"betti": result.betti, "torsion": list(result.torsion)}


# -- subcommands -------------------------------------------------------------

def _cmd_sym_homology(args) -> int:
    if args.p < 0:
        raise DomainError(f"--p must be nonnegative, got {args.p}")
    ring = parse_ring(args.ring)
    if args.degree is not None and not 0 <= args.degree <= args.p:
        raise DomainError(
            f"--degree must lie in 0..{args.p}, got {args.degree}")
    params = {"p": args.p, "ring": str(ring), "degree": args.degree}

    def compute():
        C = build_complex(args.p, ring)
        degrees = [args.degree] if args.degree is not None \
            else list(range(args.p + 1))
        results = {i: homology(C, i) for i in degrees}
        result = {"p": args.p, "ring": str(ring),
                  "betti": {str(i): results[i].betti for i in degrees}}
        if ring.kind == "Z":
            result["torsion"] = {str(i): list(results[i].torsion)
                                 for i in degrees}
            result["certified_torsion_free"] = all(
                results[i].certified_torsion_free for i in degrees)
        if args.degree is None:
            result["poincare"] = format_poincare(
                {i: results[i].betti for i in degrees})
            result["euler_characteristic"] = C.euler_characteristic()
        extras = {}
        if args.export_matrices:
            extras["exports"] = _export_complex(C, args.export_matrices)
        return result, extras

    return _run(args, "sym-homology", params, compute)


def _cmd_sym_rep(args) -> int:
    p = args.p
    if p < 0:
        raise DomainError(f"--p must be nonnegative, got {p}")
    degree = p if args.degree is None else args.degree
    if not 0 <= degree <= p:
        raise DomainError(f"--degree must lie in 0..{p}, got {degree}")
    params = {"p": p, "degree": degree}

    def compute():
        chi = top_homology_character(p) if degree == p \
            else homology_character(p, degree)
        multiplicities = {}
        for lam, mult in sorted(decompose(chi).items(), reverse=True):
            multiplicities[partition_string(lam)] = (
                int(mult) if mult.denominator == 1 else str(mult))
        result = {"p": p, "degree": degree,
                  "character": chi.to_json_dict(),
                  "dimension": int(chi.degree),
                  "multiplicities": multiplicities}
        if degree == p:
            induced = induced_character_from_cyclic(p + 1, p)
            result["matches_induced_from_cyclic"] = chi == induced
        return result

    return _run(args, "sym-rep", params, compute)


def _cmd_epi_count(args) -> int:
    if args.m < 0 or args.n < 0:
        raise DomainError("--m and --n must be nonnegative")
    params = {"m": args.m, "n": args.n}

    def compute():
        return {"m": args.m, "n": args.n, "count": epi_count(args.m, args.n)}

    return _run(args, "epi-count", params, compute)


def _resolve_components(spec: AlgebraSpec, requested):
    if requested is not None:
        return requested
    augmented = spec.has_augmentation and (
        spec.kind != "finite_dim" or spec.aug_is_algebra_map)
    return "ideal" if augmented else "whole"


def _cmd_hs(args) -> int:
    if args.degree < 0:
        raise DomainError(f"--degree must be nonnegative, got {args.degree}")
    ring = parse_ring(args.ring)
    spec, digest, name = _load_algebra(args.algebra, ring)
    weight, weight_param = _parse_weight(args.weight)
    max_nnz = None if args.max_entries == 0 else args.max_entries
    if max_nnz is not None and max_nnz < 0:
        raise DomainError("--max-entries must be nonnegative")
    params = {"algebra_sha256": digest, "algebra_name": name,
              "degree": args.degree, "ring": str(ring),
              "weight": weight_param, "m": args.m, "route": args.route,
              "components": args.components,
              "allow_unaugmented": bool(args.allow_unaugmented),
              "max_entries": args.max_entries}

    def compute():
        report = hs_degree(spec, args.degree, ring=ring, weight=weight,
                           m=args.m, route=args.route,
                           components=args.components, max_nnz=max_nnz,
                           allow_unaugmented=args.allow_unaugmented)
        extras = {}
        if args.export_matrices:
            components = _resolve_components(spec, args.components)
            if report.route == "collapsed":
                C = build_collapsed_complex(spec, args.degree, m=report.m,
                                            weight=weight,
                                            components=components,
                                            max_nnz=max_nnz)
            else:
                C = build_truncated_epi_complex(spec, args.degree,
                                                m=report.m, ring=ring,
                                                weight=weight,
                                                components=components,
                                                max_nnz=max_nnz)
            extras["exports"] = _export_complex(C, args.export_matrices)
        return report.to_json_dict(), extras

    return _run(args, "hs", params, compute)


def _cmd_hs_low(args) -> int:
    ring = parse_ring(args.ring)
    spec, digest, name = _load_algebra(args.algebra, ring)
    weight, weight_param = _parse_weight(args.weight)
    if isinstance(weight, tuple):
        raise DomainError("the low complex takes a single weight, not a "
                          "window")
    params = {"algebra_sha256": digest, "algebra_name": name,
              "ring": str(ring), "weight": weight_param}

    def compute():
        results = hs_low(spec, ring, weight)
        return {"algebra": name, "ring": str(ring), "weight": weight_param,
                "degrees": {str(i): _homology_json(results[i])
                            for i in sorted(results)}}

    return _run(args, "hs-low", params, compute)


def _cmd_hc_compare(args) -> int:
    ring = parse_ring(args.ring)
    spec, digest, name = _load_algebra(args.algebra, ring)
    weight, weight_param = _parse_weight(args.weight)
    if isinstance(weight, tuple):
        raise DomainError("the low complex takes a single weight, not a "
                          "window")
    params = {"algebra_sha256": digest, "algebra_name": name,
              "ring": str(ring), "weight": weight_param}

    def compute():
        symmetric = build_low_complex(spec, ring, weight)
        cyclic = build_hc_low_complex(spec, ring, weight)
        phi = comparison_map(spec, ring, weight)
        squares = {
            str(i): (symmetric.boundary_matrix(i) @ phi[i]
                     == phi[i - 1] @ cyclic.boundary_matrix(i))
            for i in (1, 2)}
        induced = induced_h0_map(cyclic, symmetric, phi[0])
        field = QQ if not ring.is_field else ring
        return {"algebra": name, "ring": str(ring), "weight": weight_param,
                "squares_commute": squares,
                "cyclic": {str(i): _homology_json(homology(cyclic, i))
                           for i in (0, 1)},
                "symmetric": {str(i): _homology_json(homology(symmetric, i))
                              for i in (0, 1)},
                "induced_h0": {
                    "rows": induced.rows, "cols": induced.cols,
                    "entries": [[r, c, str(v)]
                                for (r, c, v) in induced.entries],
                    "rank": rank(induced, field)}}

    return _run(args, "hc-compare", params, compute)


def _cmd_verify_paper(args) -> int:
    params = {"fast": bool(args.fast)}

    def compute():
        checks = []

        def add(check_name, passed, detail=""):
            entry = {"name": check_name, "passed": bool(passed)}
            if detail:
                entry["detail"] = detail
            checks.append(entry)

        top = 4 if args.fast else 5
        for p in range(top + 1):
            C = build_complex(p, ZZ)
            results = [homology(C, i) for i in range(p + 1)]
            poly = format_poincare({i: h.betti
                                    for i, h in enumerate(results)})
            free = all(h.certified_torsion_free for h in results)
            add(f"poincare polynomial p={p} over Z",
                poly == REFERENCE_POINCARE[p] and free,
                f"computed {poly}, reference {REFERENCE_POINCARE[p]}, "
                f"torsion-free certified: {free}")
        if not args.fast:
            C6 = build_complex(6, QQ)
            poly = format_poincare({i: homology(C6, i).betti
                                    for i in range(7)})
            add("poincare polynomial p=6 over Q",
                poly == REFERENCE_POINCARE[6],
                f"computed {poly}, reference {REFERENCE_POINCARE[6]}")

        unit = hs_low(scalar_algebra(QQ), QQ)
        add("degree 0 and 1 of the unit algebra",
            unit[0].betti == 1 and unit[1].betti == 0,
            f"betti ({unit[0].betti}, {unit[1].betti}), reference (1, 0)")
        matrices = hs_low(matrix_algebra_m2(QQ), QQ)
        add("degree 0 of the 2x2 matrix algebra vanishes",
            matrices[0].betti == 0, f"betti {matrices[0].betti}")
        for make, dim in ((group_algebra_z2, 2),
                          (truncated_polynomial_algebra, 3)):
            spec = make(QQ)
            low = hs_low(spec, QQ)
            add(f"degree 0 of the commutative algebra {spec.name} is the "
                f"algebra", low[0].betti == dim,
                f"betti {low[0].betti}, dimension {dim}")
            phi = comparison_map(spec, QQ)
            S = build_low_complex(spec, QQ)
            Cc = build_hc_low_complex(spec, QQ)
            add(f"comparison squares commute for {spec.name}",
                S.boundary_matrix(1) @ phi[1] == phi[0] @ Cc.boundary_matrix(1)
                and S.boundary_matrix(2) @ phi[2]
                == phi[1] @ Cc.boundary_matrix(2))

        C3 = build_complex(3, ZZ)
        d3 = C3.boundary_matrix(3)
        b11 = box_product(b_cycle(1), b_cycle(1))
        b20 = box_product(b_cycle(2), b_cycle(0))
        translate = [sigma_act(Permutation(images), b20)
                     for images in ((0, 3, 1, 2), (1, 2, 3, 0),
                                    (0, 3, 2, 1))]
        three = b11 - (b20 + translate[0] + translate[1])
        add("three-translate relation in degree 2 of the p=3 complex",
            solve_in_span(d3, three.to_vector()) is not None,
            "reference corpus value: b1*b1 minus the translates of b2*b0 "
            "under the identity, (0,3,1,2) and (1,2,3,0) should bound")
        four = three - translate[2]
        add("four-translate relation in degree 2 of the p=3 complex",
            solve_in_span(d3, four.to_vector()) is not None,
            "minimal boundary relation found by exhaustive search over all "
            "translate subsets; adds the translate (0,3,2,1)")

        return {"fast": bool(args.fast), "checks": checks,
                "all_passed": all(c["passed"] for c in checks)}

    return _run(args, "verify-paper", params, compute)


# -- parser ------------------------------------------------------------------

def _add_common(sub) -> None:
    sub.add_argument("--out", metavar="FILE",
                     help="write the JSON report to FILE instead of stdout")
    sub.add_argument("--cache-dir", metavar="DIR",
                     help="report cache directory (default: $SYMHOM_CACHE_DIR"
                          " or ~/.cache/symhom)")
    sub.add_argument("--no-cache", action="store_true",
                     help="always recompute; do not read or write the cache")
    sub.add_argument("--threads", type=int, default=1, metavar="N",
                     help="cap worker threads; reports do not depend on N "
                          "(default: 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symhom",
        description="Exact homology of symmetric block-tensor complexes and "
                    "symmetric/cyclic homology of small algebras.")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True,
                                metavar="COMMAND")

    sh = sub.add_parser(
        "sym-homology",
        help="homology of the block-tensor complex on p+1 generators")
    sh.add_argument("--p", type=int, required=True,
                    help="generator index (complex on p+1 generators)")
    sh.add_argument("--ring", required=True,
                    help="coefficient ring: Z, Q or F<p> (e.g. F5)")
    sh.add_argument("--degree", type=int, default=None,
                    help="report a single homology degree (default: all)")
    sh.add_argument("--export-matrices", metavar="DIR",
                    help="write the boundary matrices as audit files; "
                         "bypasses the cache")
    _add_common(sh)
    sh.set_defaults(func=_cmd_sym_homology)

    sr = sub.add_parser(
        "sym-rep",
        help="symmetric group character of one homology degree")
    sr.add_argument("--p", type=int, required=True,
                    help="generator index (complex on p+1 generators)")
    sr.add_argument("--degree", type=int, default=None,
                    help="homology degree (default: top degree p)")
    _add_common(sr)
    sr.set_defaults(func=_cmd_sym_rep)

    hs = sub.add_parser(
        "hs", help="symmetric homology of an algebra in one degree")
    hs.add_argument("--algebra", required=True, metavar="FILE",
                    help="JSON algebra description")
    hs.add_argument("--degree", type=int, required=True,
                    help="homology degree")
    hs.add_argument("--ring", default="Q",
                    help="coefficient ring: Z, Q or F<p> (default: Q)")
    hs.add_argument("--weight", metavar="W[,W...]",
                    help="weight (or comma-separated weight window) for "
                         "graded algebras")
    hs.add_argument("--m", type=int, default=None,
                    help="truncation level; values below the certified "
                         "threshold are delivered but flagged "
                         "(default: derived from --degree and echoed in the "
                         "report)")
    hs.add_argument("--route", choices=("auto", "honest", "collapsed"),
                    default="auto",
                    help="chain model: honest epimorphism complex, collapsed "
                         "rational coinvariants, or auto (collapsed over Q)")
    hs.add_argument("--components", choices=("ideal", "whole"), default=None,
                    help="tensor components: augmentation ideal or whole "
                         "algebra (default: ideal when an augmentation "
                         "exists)")
    hs.add_argument("--allow-unaugmented", action="store_true",
                    help="permit algebras without a multiplicative "
                         "augmentation (certified in degree 0 only)")
    hs.add_argument("--max-entries", type=int, default=2_000_000,
                    help="resource guard on the estimated number of matrix "
                         "entries; 0 disables (default: 2000000)")
    hs.add_argument("--export-matrices", metavar="DIR",
                    help="write the boundary matrices as audit files; "
                         "bypasses the cache")
    _add_common(hs)
    hs.set_defaults(func=_cmd_hs)

    hl = sub.add_parser(
        "hs-low",
        help="symmetric homology of an algebra in degrees 0 and 1 from the "
             "small complex")
    hl.add_argument("--algebra", required=True, metavar="FILE",
                    help="JSON algebra description")
    hl.add_argument("--ring", default="Z",
                    help="coefficient ring: Z, Q or F<p> (default: Z)")
    hl.add_argument("--weight", metavar="W",
                    help="weight slice for graded algebras")
    _add_common(hl)
    hl.set_defaults(func=_cmd_hs_low)

    hc = sub.add_parser(
        "hc-compare",
        help="compare cyclic and symmetric homology through the comparison "
             "chain map")
    hc.add_argument("--algebra", required=True, metavar="FILE",
                    help="JSON algebra description")
    hc.add_argument("--ring", default="Z",
                    help="coefficient ring: Z, Q or F<p> (default: Z)")
    hc.add_argument("--weight", metavar="W",
                    help="weight slice for graded algebras")
    _add_common(hc)
    hc.set_defaults(func=_cmd_hc_compare)

    ec = sub.add_parser(
        "epi-count",
        help="count surjections with ordered fibers between finite ordinals")
    ec.add_argument("--m", type=int, required=True, help="source ordinal")
    ec.add_argument("--n", type=int, required=True, help="target ordinal")
    _add_common(ec)
    ec.set_defaults(func=_cmd_epi_count)

    vp = sub.add_parser(
        "verify-paper",
        help="run the regression corpus against the reference values")
    vp.add_argument("--fast", action="store_true",
                    help="small-p subset (p <= 4) for quick smoke runs")
    _add_common(vp)
    vp.set_defaults(func=_cmd_verify_paper)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.threads < 1:
            raise DomainError(f"--threads must be at least 1, "
                              f"got {args.threads}")
        return args.func(args)
    except ResourceGuardError as exc:
        print(f"symhom: resource guard: {exc}", file=sys.stderr)
        return 3
    except (DomainError, ValidationError, TruncationError) as exc:
        print(f"symhom: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"symhom: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
