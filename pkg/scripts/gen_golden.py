"""Regenerate the pinned fixtures under scenarios/ and tests/golden/.

Run from the repository root after any intentional change to the PUF
arithmetic, then review the diff before committing. Test failures against
stale goldens are the point: they catch unintentional drift.
"""

from __future__ import annotations

import json
from pathlib import Path

from puftank.harness.loop import run_enrollment
from puftank.harness.scenario import load_scenario
from puftank.puf.device import synthesize_device
from puftank.puf.lut import lut_to_json, provision_lut, respond, response_to_hex
from puftank.puf.sweep import sweep_regions
from puftank.rng import derive_seeds
from puftank.verifier import table_to_json

ROOT = Path(__file__).resolve().parent.parent
SCENARIOS = ROOT / "scenarios"
GOLDEN = ROOT / "tests" / "golden"

POPULATION_SEED = 0xC0FFEE
POPULATION_SIZE = 100

# (population index, challenge) pairs pinned as response goldens.
RESPONSE_PICKS = [
    (0, 0), (0, 128), (0, 255),
    (1, 0), (2, 37), (3, 200),
    (4, 64), (5, 91), (6, 128),
    (7, 255),
]

SWEEP_CHALLENGES = [0, 1, 37, 128, 255]


def main() -> None:
    GOLDEN.mkdir(parents=True, exist_ok=True)
    seeds = tuple(derive_seeds(POPULATION_SEED, POPULATION_SIZE))

    lut = provision_lut(seeds, v_dd=1.0)
    (SCENARIOS / "lut_default.json").write_text(lut_to_json(lut) + "\n")
    print(f"lut_default.json: {len(seeds)} devices, "
          f"mean range [{min(map(min, lut.means)):.6f}, "
          f"{max(map(max, lut.means)):.6f}]")

    cfg = load_scenario(SCENARIOS / "enrollment_default.json")
    table = run_enrollment(cfg)
    (SCENARIOS / "enrollment_table.json").write_text(table_to_json(table) + "\n")
    print(f"enrollment_table.json: {len(table.pairs)} pairs, "
          f"max_temporal_diff {table.max_temporal_diff:.6f}")

    regions = {
        str(ch): [[r.lo, r.hi] for r in sweep_regions(ch, v_dd=1.0)]
        for ch in SWEEP_CHALLENGES
    }
    (GOLDEN / "sweep_regions.json").write_text(
        json.dumps({"v_dd": 1.0, "regions": regions}, indent=2) + "\n"
    )
    print(f"sweep_regions.json: challenges {SWEEP_CHALLENGES}")

    entries = []
    for pop_index, challenge in RESPONSE_PICKS:
        device = synthesize_device(seeds[pop_index])
        entries.append({
            "device_seed": seeds[pop_index],
            "challenge": challenge,
            "response_hex": response_to_hex(respond(device, lut, challenge)),
        })
    (GOLDEN / "responses.json").write_text(
        json.dumps({
            "population_seed": POPULATION_SEED,
            "population_size": POPULATION_SIZE,
            "entries": entries,
        }, indent=2) + "\n"
    )
    print(f"responses.json: {len(entries)} device/challenge pairs")


if __name__ == "__main__":
    main()
