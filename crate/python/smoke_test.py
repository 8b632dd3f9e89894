#!/usr/bin/env python3
"""Smoke test for the ntukit_py extension module.

Builds are picked up straight from the cargo target directory:

    cargo build -p ntukit-py          # or --release
    python3 python/smoke_test.py
"""

import json
import shutil
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def load_module():
    candidates = [
        REPO / "target" / "release" / "libntukit_py.so",
        REPO / "target" / "debug" / "libntukit_py.so",
        REPO / "target" / "release" / "libntukit_py.dylib",
        REPO / "target" / "debug" / "libntukit_py.dylib",
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit("build the extension first: cargo build -p ntukit-py")
    stage = Path(tempfile.mkdtemp(prefix="ntukit_py_"))
    shutil.copy2(built, stage / "ntukit_py.so")
    sys.path.insert(0, str(stage))
    import ntukit_py

    return ntukit_py


GAME_A = json.dumps(
    {
        "players": [0, 1],
        "coalitions": [
            {"members": [0], "generators": [["0"]]},
            {"members": [1], "generators": [["0"]]},
            {"members": [0, 1], "generators": [["1", "1"]]},
        ],
    }
)


def main():
    nt = load_module()
    print(f"loaded ntukit_py {nt.__version__}")

    g = nt.Game(GAME_A)
    assert g.players() == [0, 1]
    assert g.b_vector() == ["0", "0"]

    # Round trip through the canonical JSON form.
    assert nt.Game(g.to_json()) == g

    # The core is the union of the two boundary faces.
    core = g.core_region()
    assert core.boxes() == [
        [("0", True, "1", False), ("1", True, "1", True)],
        [("1", True, "1", True), ("0", True, "1", True)],
    ], core.boxes()

    # Membership predicates, including the weakly-dominated core point.
    assert g.in_core([1, 1]) and g.in_core([1, 0])
    assert not g.in_core([0, 0])
    assert g.is_pareto(["1", "-5"])
    assert not g.is_individually_rational(["1", "-5"])
    assert core.contains(["1", "1/2"])

    # Domination witnesses.
    coalition, generator = g.find_domination([0, 0])
    assert coalition == [0, 1] and generator == ["1", "1"]
    assert g.find_domination([1, 0]) is None

    # Non-levelness witness: a weakly dominated boundary point.
    s, x, y = g.find_c2_violation()
    assert (s, x, y) == ([0, 1], ["1", "1"], ["1", "0"])

    # Reduced games.
    r = g.ss_reduced([0], [1, 1])
    assert r.generators([0]) == [["1"]]
    r = g.ss_reduced([0], ["0", "1"])
    assert r.generators([0]) == [["0"]]
    r = g.ws_reduced([1], [1, 0])
    assert r.generators([1]) == [["0"]]
    try:
        g.ss_reduced([0], [0, 0])
        raise AssertionError("expected a Pareto precondition failure")
    except ValueError:
        pass

    # Perturbations and the exact Hausdorff distance.
    assert g.x_epsilon([1, 1], 1) == ["3/2", "3/2"]
    v_eps = g.epsilon_game([1, 1], 1)
    assert g.hausdorff(v_eps) == "1/2"
    v_epsx = g.epsilon_x_game([1, 1], 1)
    assert v_epsx.generators([0]) == [["3/2"]]
    assert v_epsx.core_region().sample_points() == [["3/2", "3/2"]]

    # Region algebra.
    ir = g.ir_region()
    pareto = g.pareto_region()
    assert ir.is_bounded() and not pareto.is_bounded()
    assert core.is_subset_of(ir) and core.is_subset_of(pareto)
    assert core.intersect(core.complement()).is_empty()
    assert core.union(ir) == ir.union(core)

    # Axiom checks: the core passes, the Pareto map fails consistency.
    for axiom in ["po", "nespg", "irec", "ssc", "cssc", "wsc", "wc", "am", "wispc"]:
        report = json.loads(g.check_axiom("core", axiom))
        assert report["verdict"] in ("pass", "not-applicable"), report
    report = json.loads(g.check_axiom("pareto", "ssc"))
    assert report["verdict"] == "violated"
    assert report["witness"]["kind"] == "reduced-membership"

    # Theorem desk checks.
    assert json.loads(g.check_theorem(1))["passed"]
    assert json.loads(g.check_theorem(2, [1, 1], 1))["passed"]
    assert json.loads(g.check_theorem(3, [1, 1], "1/2"))["passed"]

    # Seeded generation is deterministic, and subgames restrict.
    r1 = nt.Game.random(42, 3)
    r2 = nt.Game.random(42, 3)
    assert r1 == r2 and r1.to_json() == r2.to_json()
    sub = r1.subgame([0, 2])
    assert sub.players() == [0, 2]
    assert sub.generators([0]) == r1.generators([0])

    # Antimonotonicity partner and a small counterexample search.
    poorer = r1.impoverish(7)
    assert json.loads(r1.check_axiom("core", "am"))["verdict"] == "pass"
    assert poorer.players() == r1.players()
    outcome = json.loads(
        nt.counterexample_search("pareto", ["ssc"], seed=3, players=2, trials=8)
    )
    assert outcome["trials"] == 8 and outcome["violations"], outcome

    print("OK: all smoke checks passed")


if __name__ == "__main__":
    main()
