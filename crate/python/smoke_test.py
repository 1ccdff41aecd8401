#!/usr/bin/env python3
"""Smoke test for the cubecover_py extension module.

Builds nothing itself: expects `cargo build -p cubecover-py` (or a release
build) to have produced the shared library, copies it into a temporary
directory under the importable name, and exercises one call per binding.
"""

import json
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def locate_library() -> pathlib.Path:
    candidates = [
        ROOT / "target" / profile / name
        for profile in ("debug", "release")
        for name in ("libcubecover_py.so", "libcubecover_py.dylib", "cubecover_py.dll")
    ]
    for path in candidates:
        if path.exists():
            return path
    sys.exit("shared library not found; run `cargo build -p cubecover-py` first")


def main() -> None:
    library = locate_library()
    with tempfile.TemporaryDirectory() as tmp:
        suffix = ".pyd" if library.suffix == ".dll" else ".so"
        shutil.copy(library, pathlib.Path(tmp) / f"cubecover_py{suffix}")
        sys.path.insert(0, tmp)
        import cubecover_py as cc

        assert cc.hamming_distance("0011", "0101") == 2
        assert cc.parity("0111") == 1
        assert cc.layer_split(["000", "001", "010", "100"]) == (
            ["00", "01", "10"],
            ["00"],
        )

        assert cc.count_embeddings(1, 3) == 24
        ball = ["000", "001", "010", "100"]
        assert len(cc.isometric_copies(ball, 3)) == 8
        # Independent pairs of the 3-cube: 16 induced vs 12 isometric.
        assert len(cc.induced_copies(["00", "11"], 3)) == 16
        assert len(cc.isometric_copies(["00", "11"], 3)) == 12
        assert cc.is_isometric_copy(["00", "11"], ["01", "10"])
        assert cc.is_h_set(["00", "11"], ["000", "111"])
        assert not cc.is_isometric_copy(["00", "11"], ["000", "111"])

        rpart = json.loads(cc.build_rpart(["00", "01", "10"], 3))
        assert rpart["kind"] == "rpart" and rpart["r"] == 3
        ok, violations = cc.verify_certificate(cc.build_rpart(["00", "01", "10"], 3))
        assert ok and violations == []

        assert cc.modpart_dimension(2, 4) == 4
        cert = cc.build_modpart(["00", "11"], 4)
        parsed = json.loads(cert)
        assert parsed["kind"] == "modpart" and parsed["n"] == 4
        ok, violations = cc.verify_certificate(cert)
        assert ok, violations

        blocks = cc.solve_partition(ball, 3)
        assert blocks == [
            ["000", "001", "010", "100"],
            ["011", "101", "110", "111"],
        ]
        assert cc.solve_partition(["00", "01", "11"], 4) is None
        try:
            cc.solve_partition(ball, 3, "isometric", 0)
        except RuntimeError as e:
            assert "budget" in str(e)
        else:
            raise AssertionError("expected RuntimeError on a zero budget")

        assert cc.grid_parity_counts(3, 3) == (14, 13)
        h = cc.grid_counterexample(3, 4)
        assert h is not None and len(h) == 9
        assert cc.grid_counterexample(3, 2) is None

        paths = cc.antipodal_paths(3)
        assert len(paths) == 4 and all(len(p) == 4 for p in paths)
        segments = cc.segment_paths(6, 3)
        assert len(segments) == 64 and all(len(s) == 4 for s in segments)
        assert cc.edge_feasible(5, 4) is True
        assert cc.edge_feasible(5, 3) is False
        assert cc.edge_feasible(4, 2) is None

    print("smoke test passed")


if __name__ == "__main__":
    main()
