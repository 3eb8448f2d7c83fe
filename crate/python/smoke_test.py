#!/usr/bin/env python3
"""Smoke test for the orbitmesy_py extension module.

Builds are produced by `cargo build [--release] -p orbitmesy-python`; this
script finds the cdylib, makes it importable, and exercises the bindings.
"""

import json
import shutil
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def import_extension():
    candidates = [
        REPO / "target" / "release" / "liborbitmesy_py.so",
        REPO / "target" / "debug" / "liborbitmesy_py.so",
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit(
            "no built extension found; run `cargo build --release -p orbitmesy-python`"
        )
    stage = Path(tempfile.mkdtemp(prefix="orbitmesy_py_"))
    shutil.copy2(built, stage / "orbitmesy_py.so")
    sys.path.insert(0, str(stage))
    import orbitmesy_py

    return orbitmesy_py


def main():
    om = import_extension()

    z4 = om.Poset.zigzag(4)
    assert z4.n() == 4
    assert z4.covers() == [(0, 1), (2, 1), (2, 3)]
    assert len(om.enumerate_inc(z4, 6)) == 190
    print("PASS enumerate: |Inc^6(Z4)| = 190")

    f = om.Labeling(z4, 4, [1, 4, 2, 3])
    assert f.promote().labels() == [3, 4, 1, 2]
    assert f.promote().promote_inverse() == f
    print("PASS promote: (1,4,2,3) -> (3,4,1,2) and back")

    g = f.swap()
    assert g.swap() == f
    assert g.content() == f.content()[::-1]
    assert f.swap().promote() == f.promote_inverse().swap()
    print("PASS swap: involution, content reversal, anticommutation")

    h = om.Labeling(z4, 6, [1, 4, 2, 6])
    assert h.content() == "110101"
    assert h.deflate().labels() == [1, 3, 2, 4]
    assert om.Labeling.inflate(h.deflate(), h.content()) == h
    assert h.orbit_size() == len(h.orbit())
    assert h.reading_word() == [1, 4, 2, 6]
    assert h.contains_pattern([1, 3, 2, 4])
    assert not h.is_balanced()
    print("PASS labeling: content, deflation, inflation, orbit size, pattern")

    assert om.promotion_order(z4, 6) == 90
    assert om.promotion_order(z4, 6, mode="brute") == 90
    assert om.promotion_order(om.Poset.zigzag(3), 5, mode="formula") == 10
    print("PASS order: promotion order on Inc^6(Z4) is 90")

    table = om.orbit_size_table_csv(z4)
    assert table.splitlines()[0] == "ell,r=2 tau=1,r=3 tau=5,r=4 tau=2,r=4 tau=3"
    print("PASS table: symbolic orbit sizes on the packed zig-zag 4 orbits")

    census = json.loads(om.census_json(z4, 6))
    assert census["summary"]["orbits"] == 16
    assert census["summary"]["orbitmesic_counts"] == {"A_e": 14, "A_i": 14, "Tot": 16}
    bad = sorted(
        Fraction(o["averages"]["A_e"])
        for o in census["orbits"]
        if not o["orbitmesic"]["A_e"]
    )
    assert bad == [Fraction(41, 6), Fraction(43, 6)]
    print("PASS census: 16 orbits, the two exceptional averages 41/6 and 43/6")

    ideals = z4.order_ideals()
    assert len(ideals) == 8
    images = sorted(tuple(z4.rowmotion(i)) for i in ideals)
    assert images == sorted(tuple(i) for i in ideals)
    assert z4.dual_ideal(z4.dual_ideal([0, 2])) == [0, 2]
    assert z4.canonical_involution() == [3, 2, 1, 0]
    print("PASS ideals: rowmotion permutes J(Z4), dual ideal is an involution")

    big = om.Poset.example()
    assert big.n() == 10
    r = om.Labeling(big, 9, [1, 1, 2, 4, 6, 4, 3, 8, 9, 8])
    assert r.promote().labels() == [3, 2, 1, 7, 5, 7, 7, 9, 8, 9]
    print("PASS example: ten-element promotion image matches")

    print("all smoke tests passed")


if __name__ == "__main__":
    main()
