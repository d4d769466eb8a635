"""Smoke test for the pyrelbimod extension module.

Build first with `cargo build -p relbimod-python --release`; the script
copies the shared library next to itself as pyrelbimod.so when needed.
"""

import json
import shutil
import sys
from pathlib import Path

HERE = Path(__file__).resolve().parent
ROOT = HERE.parent
FIXTURES = ROOT / "fixtures"


def load():
    target = HERE / "pyrelbimod.so"
    for profile in ("release", "debug"):
        built = ROOT / "target" / profile / "libpyrelbimod.so"
        if built.exists() and (not target.exists() or built.stat().st_mtime > target.stat().st_mtime):
            shutil.copy(built, target)
            break
    sys.path.insert(0, str(HERE))
    import pyrelbimod

    return pyrelbimod


def main():
    rb = load()

    square = rb.Presentation.from_file(FIXTURES / "square.pres")
    assert square.kind == "algebra" and square.generators == ["x"]
    ctx = rb.GradedContext(square, 5)
    assert [ctx.pi2_dim(d) for d in range(2, 6)] == [0, 1, 1, 0]
    assert all(r["verdict"] == "pass" for r in ctx.reports())

    comm = rb.Presentation.from_file(FIXTURES / "commutator.pres")
    assert [rb.GradedContext(comm, 4).algebra_dim(d) for d in range(5)] == [1, 2, 3, 4, 5]
    assert rb.mu_kernel_check(2, 4)["pass"]

    cm = rb.Presentation.from_file(FIXTURES / "commutative_monoid.pres")
    assert [rb.squier_h1(cm, n) for n in range(5)] == [(0, [])] * 5
    assert rb.edge_embedding_check(cm, 5)["pass"]
    assert rb.enumerate_monoid(cm) is None

    cs = rb.Presentation.from_file(FIXTURES / "cube_square.pres")
    m = rb.enumerate_monoid(cs)
    assert m.size == 3 and m.eval("x x x x") == m.eval("x x")
    assert m.cayley_report("left")["pi2_rank"] == 2
    assert m.cayley_report("two_sided")["pi2_rank"] == 6
    t = rb.monoid_from_table(cs, (FIXTURES / "cube_square.table").read_text())
    assert t.table == m.table

    assert rb.smith_invariants([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]
    assert rb.smith_invariants([[10**30, 0], [0, 10**30]]) == [10**30, 10**30]

    out, code = rb.run_cli(str(FIXTURES / "exterior.pres"), "graded", max_degree=4)
    assert code == 0 and json.loads(out)["outcome"]["status"] == "pass"

    try:
        rb.Presentation.parse("kind: monoid\ngenerators: x\nrelation: x q = x\n")
    except ValueError:
        pass
    else:
        raise AssertionError("parse error not raised")

    print("pyrelbimod smoke test: ok")


if __name__ == "__main__":
    main()
