"""Command-line entry point.

Exit codes: 0 success, 1 verified-false (a violation or failed stage),
2 usage or format error.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
from importlib import resources
from pathlib import Path

from . import pi1
from .complex import ComplexError, SimplicialComplex, free_faces, greedy_collapse, link
from .constructions import BUILDERS, PolyhedralComplex, the_23_vertex_complex, weber_seifert_quotient
from .geometry import GeometryError, PolygonalCurve, find_linked_cycle_pair, linking_number, verify_embedding
from .homology import cellular_homology, reduced_homology_all
from .io import FormatError, format_complex, format_coordinates, format_polyhedral, parse_complex, read_coordinates
from .realization import cone_realization, match_action, search_coordinates

OK, FAILED, USAGE = 0, 1, 2
A5_GENS = [(1, 2, 0, 3, 4), (0, 1, 3, 4, 2)]


class UsageError(Exception):
    pass


def tool_version() -> str:
    try:
        from importlib.metadata import version

        return version("artifact")
    except Exception:
        return "0+unknown"


def build_named(name: str):
    if name == "dodecahedral-quotient":
        return weber_seifert_quotient(1)
    if name not in BUILDERS:
        raise UsageError(f"unknown complex {name!r}; choose from {', '.join(BUILDERS)}")
    return BUILDERS[name]()


def complex_text(K) -> str:
    return format_polyhedral(K) if isinstance(K, PolyhedralComplex) else format_complex(K)


def load_complex(arg: str):
    """A file path, or the name of a built-in complex."""
    p = Path(arg)
    if p.is_file():
        return parse_complex(p.read_text())
    if arg in BUILDERS:
        return build_named(arg)
    raise UsageError(f"no such file or complex: {arg}")


def fvec(K) -> str:
    v = K.counts if isinstance(K, PolyhedralComplex) else K.f_vector
    return "(" + ",".join(map(str, v)) + ")"


def _out(text: str, path):
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


# -- subcommands ----------------------------------------------------------------


def cmd_build(args):
    K = build_named(args.name)
    _out(complex_text(K), args.output)
    print(f"f-vector: {fvec(K)}", file=sys.stderr if not args.output else sys.stdout)
    return OK


def analyze_homology(K) -> list[str]:
    if isinstance(K, PolyhedralComplex):
        H = cellular_homology(K)
        lines = [f"cells: {fvec(K)}", f"euler characteristic: {K.euler_characteristic}"]
        lines += [f"H{k}: {h}" for k, h in enumerate(H)]
        return lines
    H = reduced_homology_all(K)
    lines = [f"f-vector: {fvec(K)}", f"euler characteristic: {K.euler_characteristic}"]
    lines += [f"reduced H{k}: {h}" for k, h in enumerate(H)]
    lines.append(f"Z-acyclic: {str(all(h.is_trivial for h in H)).lower()}")
    return lines


def pi1_summary(K: SimplicialComplex, max_cosets=100_000):
    base = "B" if "B" in K.vertices else K.vertices[0]
    P = pi1.edge_path_presentation(K, base)
    Q, exhausted = pi1.tietze_simplify(P)
    ab = pi1.abelianization(Q)
    try:
        hom = pi1.find_epimorphism(Q, A5_GENS)
        hom_err = None
    except pi1.SearchTooLarge as e:
        hom, hom_err = None, str(e)
    order = pi1.coset_enumeration(Q, max_cosets)
    return dict(base=base, P=P, Q=Q, exhausted=exhausted, ab=ab, hom=hom, hom_err=hom_err, order=order)


def analyze_pi1(K) -> list[str]:
    if isinstance(K, PolyhedralComplex):
        raise UsageError("pi1 needs a simplicial complex")
    s = pi1_summary(K)
    lines = [
        f"basepoint: {s['base']}",
        f"presentation: {s['P'].generator_count} generators, {len(s['P'].relators)} relators",
        f"simplified: {s['Q'].generator_count} generators, {len(s['Q'].relators)} relators"
        + (" (budget exhausted)" if s["exhausted"] else ""),
        f"simplified presentation: {s['Q']}",
        f"abelianization: {s['ab']}",
    ]
    if s["hom"] is not None:
        imgs = ", ".join(pi1.cycles(x) for x in s["hom"].images)
        lines.append(f"A5 epimorphism: found [{imgs}]")
    else:
        lines.append("A5 epimorphism: none" + (f" ({s['hom_err']})" if s["hom_err"] else ""))
    lines.append(f"order: {s['order']}")
    return lines


def analyze_collapse(K) -> list[str]:
    if isinstance(K, PolyhedralComplex):
        raise UsageError("collapse needs a simplicial complex")
    nfree = len(free_faces(K.face_set))
    R, point, log = greedy_collapse(K)
    return [f"free faces: {nfree}; collapsed: {str(point).lower()}",
            f"elementary collapses: {len(log)}", f"remaining f-vector: {fvec(R)}"]


def cmd_analyze(args):
    K = load_complex(args.complex)
    fn = {"homology": analyze_homology, "pi1": analyze_pi1, "collapse": analyze_collapse}[args.what]
    print("\n".join(fn(K)))
    return OK


def _simplicial(K):
    if not isinstance(K, SimplicialComplex):
        raise UsageError("expected a simplicial complex (facet lines)")
    return K


def cmd_verify(args):
    K = _simplicial(load_complex(args.complex))
    coords = read_coordinates(args.coords)
    cert = verify_embedding(K, coords)
    print(f"faces: {cert.faces}; pairs: {cert.pairs}; pairs tested: {cert.pairs_tested}")
    if cert.ok:
        print("verdict: embedding")
        return OK
    s, t, v = cert.violation
    print("verdict: violation")
    print(f"faces: {' '.join(s)} | {' '.join(t)}")
    if v is None:
        print("witness: degenerate face")
    else:
        print("witness: " + " ".join(str(c) for c in v.witness))
    return FAILED


def cmd_search(args):
    K = _simplicial(load_complex(args.complex))
    try:
        action = match_action(K)
    except ComplexError as e:
        print(f"error: {e}", file=sys.stderr)
        return FAILED
    coords, stats = search_coordinates(K, action, box=args.box, budget=args.budget)
    print(f"nodes: {stats.nodes}; exhausted: {str(stats.exhausted).lower()}; "
          f"budget hit: {str(stats.budget_hit).lower()}", file=sys.stderr)
    if coords is None:
        print("no embedding found", file=sys.stderr)
        return FAILED
    _out(format_coordinates(coords, order=K.vertices), args.output)
    return OK


def _curve(path):
    c = read_coordinates(path)
    if c.dim != 3:
        raise FormatError(f"{path}: curves live in R^3")
    return PolygonalCurve(tuple(c.assignment.values()))


def cmd_link(args):
    C1, C2 = _curve(args.curve1), _curve(args.curve2)
    print(f"linking number: {linking_number(C1, C2)}")
    return OK


# -- report ----------------------------------------------------------------------


def _sha(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def fixture_text(name: str) -> str | None:
    try:
        return resources.files("zacyclic").joinpath("models", name).read_text()
    except (FileNotFoundError, OSError):
        return None


def run_report(box: int = 4, fixture: str | None = "shaded-r3", max_cycle: int = 5):
    """The full pipeline.  Returns ``(lines, files, ok)``; ``files`` maps
    suffixes to emitted model texts."""
    from .io import parse_coordinates

    lines, files, ok = [], {}, True

    def field(k, v):
        lines.append(f"{k}: {v}")

    K = the_23_vertex_complex()
    S = BUILDERS["shaded"]()
    ktext, stext = complex_text(K), complex_text(S)
    files["complex23"], files["shaded"] = ktext, stext
    field("complexName", "complex23")
    field("fVector", fvec(K))
    acyclic = all(h.is_trivial for h in reduced_homology_all(K))
    field("acyclic", str(acyclic).lower())
    ok &= acyclic
    s = pi1_summary(K)
    field("pi1.basepoint", s["base"])
    field("pi1.presentation", f"{s['P'].generator_count} generators, {len(s['P'].relators)} relators")
    field("pi1.simplified", f"{s['Q'].generator_count} generators, {len(s['Q'].relators)} relators")
    field("pi1.abelianization", s["ab"])
    if s["hom"] is not None:
        field("pi1.a5Epimorphism", ", ".join(pi1.cycles(x) for x in s["hom"].images))
    else:
        field("pi1.a5Epimorphism", "none")
        ok = False
    field("pi1.order", s["order"])
    ok &= s["order"] == 120

    # embedding: the shipped model if it fits the box, else search
    coords, source = None, "search"
    ftext = fixture_text(fixture) if fixture else None
    action = match_action(S)
    if ftext is not None:
        c = parse_coordinates(ftext)
        if c.max_abs() <= box and verify_embedding(S, c).ok:
            coords, source = c, f"fixture models/{fixture}"
    if coords is None:
        coords, _ = search_coordinates(S, action, box=box)
    field("embedding.complex", "shaded")
    field("embedding.box", box)
    field("embedding.source", source)
    inputs = {"complex23": ktext, "shaded": stext}
    if ftext is not None:
        inputs[f"models/{fixture}"] = ftext
    if coords is None:
        field("embedding.verdict", "FAIL (no equivariant embedding in the box)")
        field("flagged", "true")
        _hashes(lines, inputs)
        return lines, files, False
    cert3 = verify_embedding(S, coords)
    field("embedding.dim", 3)
    field("embedding.maxAbs", coords.max_abs())
    field("embedding.pairsChecked", cert3.pairs)
    field("embedding.pairsTested", cert3.pairs_tested)
    field("embedding.verdict", "pass" if cert3.ok else "FAIL")
    ok &= cert3.ok
    files["shaded-r3"] = format_coordinates(coords, order=S.vertices)
    try:
        c4, cert4 = cone_realization(K, coords)
        field("embedding4.apex", "A (0,0,0,1)")
        field("embedding4.pairsChecked", cert4.pairs)
        field("embedding4.verdict", "pass")
        files["full-r4"] = format_coordinates(c4, order=K.vertices)
    except GeometryError as e:
        field("embedding4.verdict", f"FAIL ({e})")
        ok = False
    side = link(K, "A").vertices
    pair = find_linked_cycle_pair(S, coords, side, max_len=max_cycle)
    if pair is None:
        field("linkedPair", "none")
        ok = False
    else:
        c1, c2, lk = pair
        field("linkedPair.cycle1", " ".join(c1))
        field("linkedPair.cycle2", " ".join(c2))
        field("linkedPair.lk", lk)
    field("flagged", str(not ok).lower())
    _hashes(lines, inputs)
    return lines, files, ok


def _hashes(lines, inputs):
    lines.append(f"toolVersion: {tool_version()}")
    for k in sorted(inputs):
        lines.append(f"inputHash.{k}: sha256:{_sha(inputs[k])}")


def cmd_report(args):
    lines, files, ok = run_report(box=args.box)
    text = "\n".join(lines) + "\n"
    if args.output:
        out = Path(args.output)
        out.write_text(text)
        for suffix, body in files.items():
            out.with_name(f"{out.name}.{suffix}").write_text(body)
    else:
        sys.stdout.write(text)
    return OK if ok else FAILED


def make_parser():
    p = argparse.ArgumentParser(prog="zacyclic", description="Z-acyclic complexes and their realizations")
    sub = p.add_subparsers(dest="cmd", required=True)
    b = sub.add_parser("build", help="write a built-in complex")
    b.add_argument("name")
    b.add_argument("-o", "--output")
    b.set_defaults(fn=cmd_build)
    a = sub.add_parser("analyze", help="homology, fundamental group or collapse")
    a.add_argument("complex", help="complex file or built-in name")
    a.add_argument("what", choices=["homology", "pi1", "collapse"])
    a.set_defaults(fn=cmd_analyze)
    v = sub.add_parser("verify", help="check a linear embedding")
    v.add_argument("complex")
    v.add_argument("coords")
    v.set_defaults(fn=cmd_verify)
    s = sub.add_parser("search", help="equivariant integer embedding in R^3")
    s.add_argument("complex")
    s.add_argument("--box", type=int, default=4)
    s.add_argument("--budget", type=int, default=10**6)
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_search)
    k = sub.add_parser("link", help="linking number of two polygonal curves")
    k.add_argument("curve1")
    k.add_argument("curve2")
    k.set_defaults(fn=cmd_link)
    r = sub.add_parser("report", help="run the whole pipeline")
    r.add_argument("-o", "--output")
    r.add_argument("--box", type=int, default=4)
    r.set_defaults(fn=cmd_report)
    return p


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK
    try:
        return args.fn(args)
    except (UsageError, FormatError, GeometryError, ComplexError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
