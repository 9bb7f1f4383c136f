"""Smoke test for the Python extension.

Build first with `cargo build --release -p loopbracket-py`; the script copies the
shared library next to a temporary import path under the module name
`loopbracket` and exercises the main entry points.
"""

import importlib.util
import json
import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load():
    for profile in ("release", "debug"):
        for name in ("libloopbracket_py.so", "libloopbracket_py.dylib", "loopbracket_py.dll"):
            lib = ROOT / "target" / profile / name
            if lib.exists():
                suffix = ".pyd" if name.endswith(".dll") else ".so"
                dest = Path(tempfile.mkdtemp()) / f"loopbracket{suffix}"
                shutil.copy(lib, dest)
                spec = importlib.util.spec_from_file_location("loopbracket", dest)
                module = importlib.util.module_from_spec(spec)
                spec.loader.exec_module(module)
                return module
    sys.exit("extension not built: run `cargo build --release -p loopbracket-py`")


def terms(sum_json):
    return {t["class"]: t["coeff"] for t in json.loads(sum_json)["terms"]}


def main():
    lb = load()

    assert lb.free_reduce("a1 b1 B1 a1", 2) == "a1 a1"
    assert lb.dehn_reduce("a1 b1 A1 B1 a2", 2) == "b2 a2 B2"
    assert lb.canonical_class("b1 a1 B1", 2) == lb.canonical_class("a1", 2)
    assert lb.are_conjugate("a1 b1", "b1 a1", 2)
    assert not lb.are_conjugate("a1", "a2", 2)
    assert len(lb.enumerate_classes(2, 1)) == 9

    assert terms(lb.bracket(1, "(1,0)", "(0,1)")) == {"(1,1)": "1/1"}
    assert terms(lb.bracket(2, "a1", "b1")) == {"a1 b1": "1/1"}
    assert terms(lb.bracket(2, "a1", "a2")) == {}

    err, min_trace, ok = lb.rep_check(2)
    assert ok and err < 1e-9 and min_trace > 2

    alg = lb.BVAlgebra(2)
    assert alg.signs == lb.DEFAULT_SIGNS
    a1 = json.dumps({"genus": 2, "h1": {"alpha": ["1/1", "0/1", "0/1", "0/1"]}})
    b1 = json.dumps({"genus": 2, "h1": {"alpha": ["0/1", "1/1", "0/1", "0/1"]}})
    prod = json.loads(alg.cup(a1, b1))
    assert prod["h2"]["terms"] == [{"coeff": "1/1", "class": ""}], prod
    assert json.loads(alg.delta(json.dumps(prod)))["h1"]["loops"]["terms"] == []

    report = json.loads(lb.BVAlgebra(1).verify(samples=50, seed=7))
    assert report["passed"], report
    goldman = json.loads(lb.verify_goldman_suite(2, samples=5))
    assert goldman["passed"], goldman

    try:
        lb.bracket(2, "a3", "b1")
    except ValueError:
        pass
    else:
        raise AssertionError("expected a parse error")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
