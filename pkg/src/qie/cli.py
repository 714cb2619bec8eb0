"""Command-line front end.

Commands: solve (invariants of one diagram), compare (two diagrams
under one quandle), generate (write a built-in diagram), check (axiom
or diagram validation reports).

Exit codes: 0 success (for compare: the links were distinguished);
1 compare ran cleanly but did not distinguish; 2 usage errors;
3 parse, validation, or spec errors; 4 solver guard trips (enumeration
guard, row cap, table size). Standard output is a pure function of the
inputs and settings: timing and warnings go to standard error, and
reports never vary with --threads.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
import warnings

from qie.algebra import (
    QuandleError,
    QuandleSpecError,
    SizeGuardError,
    build_quandle,
    check_axioms,
    connected_components,
)
from qie.diagram import (
    TEST_LINK_NAMES,
    DiagramError,
    gen_allen_swenberg,
    gen_hopf_sum,
    gen_test_link,
    parse_link,
    serialize,
    validate,
)
from qie.invariant import distinguishes, enhanced_polynomial, partition_census
from qie.solver import (
    GuardExceeded,
    RowCapExceeded,
    SolverError,
    brute_force_solve,
    solve,
)
from qie._kernels import backend_name

EXIT_OK = 0
EXIT_NOT_DISTINGUISHED = 1
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_GUARD = 4

_GENERATOR_HELP = "hopfsum, aslink:n, " + ", ".join(TEST_LINK_NAMES)


def _gen_diagram(token):
    """Build a diagram from a generator token like hopfsum or aslink:2."""
    base, sep, num = token.partition(":")
    if base == "aslink":
        if not sep or not num:
            raise DiagramError("aslink needs a copy count, e.g. aslink:2")
        try:
            n = int(num)
        except ValueError:
            raise DiagramError(
                f"aslink copy count must be an integer, got {num!r}"
            ) from None
        return gen_allen_swenberg(n)
    if sep:
        raise DiagramError(f"generator {base!r} takes no argument")
    if base == "hopfsum":
        return gen_hopf_sum()
    if base in TEST_LINK_NAMES:
        return gen_test_link(base)
    raise DiagramError(f"unknown generator {token!r}; known: {_GENERATOR_HELP}")


def _read_link(path):
    with open(path, "rb") as fh:
        return parse_link(fh.read())


def _resolve_link(value):
    """A --link-a/--link-b value: gen:NAME[:N] or a file path."""
    if value.startswith("gen:"):
        return _gen_diagram(value[4:])
    return _read_link(value)


def _solve_diagram(d, q, args):
    """Run the selected method, returning (hom, warning messages)."""
    with warnings.catch_warnings(record=True) as wrec:
        warnings.simplefilter("always")
        t0 = time.perf_counter()
        if args.method == "brute":
            hom = brute_force_solve(d, q)
        else:
            hom = solve(
                d,
                q,
                chunk_size=args.chunk_size,
                row_cap=args.row_cap,
                threads=args.threads,
            )
        dt = time.perf_counter() - t0
    notes = [str(w.message) for w in wrec]
    print(
        f"solved {d.name or 'link'}: {len(hom)} colorings in {dt:.2f}s "
        f"[{args.method}, {backend_name()} kernels]",
        file=sys.stderr,
    )
    for msg in notes:
        print(f"warning: {msg}", file=sys.stderr)
    return hom, notes


def _census_json(census):
    return {
        str(k): [{"partition": str(p), "count": m} for p, m in entries]
        for k, entries in census.items()
    }


def cmd_solve(args):
    q = build_quandle(args.quandle)
    d = _gen_diagram(args.gen) if args.gen else _read_link(args.link)
    hom, notes = _solve_diagram(d, q, args)
    poly = enhanced_polynomial(hom)
    census = partition_census(hom) if args.census else None

    if args.format == "text":
        print(f"phi_E = {poly}; |Hom| = {len(hom)}")
        if census is not None:
            for k, entries in census.items():
                total = sum(m for _, m in entries)
                print(f"|Im(f)| = {k}: {len(entries)} partition(s), {total} coloring(s)")
                for part, mult in entries:
                    print(f"  {part} x{mult}")
    elif args.format == "json":
        report = {
            "link": d.name,
            "arcs": d.arc_count,
            "quandle": args.quandle,
            "method": args.method,
            "hom": len(hom),
            "phi": poly.to_json_dict(),
        }
        if census is not None:
            report["census"] = _census_json(census)
        report["settings"] = {
            "chunk_size": args.chunk_size,
            "row_cap": args.row_cap,
        }
        report["warnings"] = notes
        print(json.dumps(report, separators=(",", ":")))
    else:
        w = csv.writer(sys.stdout, lineterminator="\n")
        if census is None:
            w.writerow(["exponent", "coefficient"])
            for e, c in poly.items():
                w.writerow([e, c])
        else:
            w.writerow(["image_size", "partition", "multiplicity"])
            for k, entries in census.items():
                for part, mult in entries:
                    w.writerow([k, str(part), mult])
    return EXIT_OK


def cmd_compare(args):
    q = build_quandle(args.quandle)
    da = _resolve_link(args.link_a)
    db = _resolve_link(args.link_b)
    hom_a, _ = _solve_diagram(da, q, args)
    hom_b, _ = _solve_diagram(db, q, args)
    pa = enhanced_polynomial(hom_a)
    pb = enhanced_polynomial(hom_b)
    rep = distinguishes(pa, pb)

    if args.format == "text":
        print(f"a: {da.name or 'link-a'}: phi_E = {pa}; |Hom| = {len(hom_a)}")
        print(f"b: {db.name or 'link-b'}: phi_E = {pb}; |Hom| = {len(hom_b)}")
        print(f"counting distinguishes: {'yes' if rep.counting else 'no'}")
        print(f"enhanced distinguishes: {'yes' if rep.enhanced else 'no'}")
    else:
        report = {
            "link_a": da.name,
            "link_b": db.name,
            "quandle": args.quandle,
            "method": args.method,
            "hom_a": len(hom_a),
            "hom_b": len(hom_b),
            "phi_a": pa.to_json_dict(),
            "phi_b": pb.to_json_dict(),
            "counting_distinguishes": rep.counting,
            "enhanced_distinguishes": rep.enhanced,
        }
        print(json.dumps(report, separators=(",", ":")))
    return EXIT_OK if rep.enhanced else EXIT_NOT_DISTINGUISHED


def cmd_generate(args):
    d = _gen_diagram(args.gen)
    blob = serialize(d)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(blob)
        print(
            f"wrote {d.name}: {d.arc_count} arcs, {len(d.crossings)} "
            f"crossings to {args.out}",
            file=sys.stderr,
        )
    else:
        sys.stdout.buffer.write(blob + b"\n")
        sys.stdout.buffer.flush()
    return EXIT_OK


def cmd_check(args):
    if args.quandle:
        q = build_quandle(args.quandle)
        rep = check_axioms(q)
        print(f"kind = {q.kind}, size = {len(q)}")
        for label, passed in (
            ("idempotent", rep.idempotent),
            ("right invertible", rep.right_invertible),
            ("self distributive", rep.distributive),
        ):
            print(f"{label}: {'pass' if passed else 'fail'}")
        for axiom, witness in sorted(rep.counterexamples.items()):
            print(f"  counterexample ({axiom}): elements {witness}")
        if q.kind == "symplectic":
            zero = q.elements[0]
            nonzero = [i for i, e in enumerate(q.elements) if e != zero]
            orbits = connected_components(q, nonzero)
            if len(orbits) == 1:
                print(f"nonzero subquandle: connected ({len(nonzero)} elements, 1 orbit)")
            else:
                sizes = ", ".join(str(len(o)) for o in orbits)
                print(f"nonzero subquandle: {len(orbits)} orbits (sizes {sizes})")
        return EXIT_OK if rep.ok else EXIT_DATA

    with open(args.link, "rb") as fh:
        d = parse_link(fh.read(), strict=False)
    mode = "lenient" if d.tangle else "strict"
    rep = validate(d, mode)
    header = (
        f"{d.name or 'link'}: {d.arc_count} arcs, {len(d.crossings)} "
        f"crossings, {mode} mode"
    )
    if rep.ok:
        print(f"{header}: clean")
        return EXIT_OK
    print(f"{header}: {len(rep.findings)} finding(s)")
    for f in rep.findings:
        print(f"  {f}")
    return EXIT_DATA


def _add_solver_options(sp):
    sp.add_argument(
        "--quandle", required=True, metavar="SPEC",
        help="quandle spec, e.g. symplectic:p=5,n=1 or takasaki:n=3",
    )
    sp.add_argument(
        "--method", choices=("dc", "brute"), default="dc",
        help="dc: divide-and-conquer joins (default); brute: guarded direct enumeration",
    )
    sp.add_argument(
        "--chunk-size", type=int, default=3, choices=range(1, 6), metavar="K",
        help="crossings per chunk for the dc method (1..5, default 3)",
    )
    sp.add_argument(
        "--row-cap", type=int, default=None, metavar="N",
        help="abort when an intermediate join would exceed N rows "
        "(default: QIE_ROW_CAP or 10^7)",
    )
    sp.add_argument(
        "--threads", type=int, default=1, metavar="N",
        help="worker threads for chunk enumeration; never changes output",
    )


def build_parser():
    p = argparse.ArgumentParser(
        prog="qie",
        description="Quandle coloring invariants for knot and link diagrams.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("solve", help="compute invariants of one diagram")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--link", metavar="PATH", help="link file (JSON or text form)")
    src.add_argument("--gen", metavar="NAME", help=f"generator: {_GENERATOR_HELP}")
    _add_solver_options(sp)
    sp.add_argument("--census", action="store_true", help="include the color-partition census")
    sp.add_argument("--format", choices=("json", "csv", "text"), default="text")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("compare", help="compare two diagrams under one quandle")
    sp.add_argument("--link-a", required=True, metavar="SRC", help="path or gen:NAME")
    sp.add_argument("--link-b", required=True, metavar="SRC", help="path or gen:NAME")
    _add_solver_options(sp)
    sp.add_argument("--format", choices=("json", "text"), default="text")
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("generate", help="write a built-in diagram as canonical JSON")
    sp.add_argument("--gen", required=True, metavar="NAME", help=f"generator: {_GENERATOR_HELP}")
    sp.add_argument("--out", metavar="PATH", help="output file (default: standard output)")
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("check", help="validate a quandle spec or a link file")
    what = sp.add_mutually_exclusive_group(required=True)
    what.add_argument("--quandle", metavar="SPEC", help="quandle spec to verify axioms for")
    what.add_argument("--link", metavar="PATH", help="link file to validate")
    sp.set_defaults(func=cmd_check)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", 1) is not None and getattr(args, "threads", 1) < 1:
        parser.error("--threads must be at least 1")
    if getattr(args, "row_cap", None) is not None and args.row_cap < 1:
        parser.error("--row-cap must be at least 1")
    try:
        return args.func(args)
    except (GuardExceeded, RowCapExceeded, SizeGuardError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (QuandleSpecError, QuandleError, DiagramError, SolverError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
