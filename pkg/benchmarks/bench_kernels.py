"""Compiled vs pure-Python exact LP kernel.

Times every face-pair test of the R^4 cone model (the heaviest verification
in the pipeline) on both backends and checks they agree.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time
from importlib import resources

from zacyclic import kernels
from zacyclic.constructions import the_23_vertex_complex
from zacyclic.geometry import GeomSimplex, _integer_rows
from zacyclic.io import parse_coordinates


def pair_problems():
    K = the_23_vertex_complex()
    c = parse_coordinates(resources.files("zacyclic").joinpath("models", "full-r4").read_text())
    faces = K.faces()
    probs = []
    for i, s in enumerate(faces):
        for t in faces[i + 1:]:
            if set(s) <= set(t) or set(t) <= set(s):
                continue
            a, b = GeomSimplex(tuple(c[v] for v in s)), GeomSimplex(tuple(c[v] for v in t))
            P, Q = _integer_rows(a.points, b.points)
            obj = [0 if v in t else 1 for v in s] + [0 if v in s else 1 for v in t]
            probs.append((P, Q, obj))
    return probs


def run(backend, probs):
    t = time.perf_counter()
    out = [kernels.intersect_lp(P, Q, o, backend) for P, Q, o in probs]
    return time.perf_counter() - t, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    probs = pair_problems()
    print(f"{len(probs)} LP problems (all face pairs of the R^4 model, no prefilter)")
    backends = ["python"] + (["compiled"] if kernels._lpkernel is not None else [])
    results = {}
    for b in backends:
        best, out = min((run(b, probs) for _ in range(args.repeat)), key=lambda r: r[0])
        results[b] = out
        print(f"{b:>9}: {best:.3f} s  ({1e6 * best / len(probs):.1f} us/problem)")
    if len(results) == 2:
        assert results["python"] == results["compiled"], "backends disagree"
        print("backends agree on every problem")
    else:
        print("compiled kernel not built; only the fallback was timed")


if __name__ == "__main__":
    main()
