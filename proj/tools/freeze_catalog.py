"""Rewrites data/catalog.json with the FNV-1a hash of every object file.

Run after editing anything under data/objects; the loader refuses files
whose bytes no longer match.
"""

import json
from pathlib import Path

DATA = Path(__file__).resolve().parents[1] / "data"
KINDS = (".poly", ".ideal", ".map", ".series")


def fnv1a64(data: bytes) -> int:
    h = 0xCBF29CE484222325
    for b in data:
        h ^= b
        h = (h * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
    return h


def main():
    objects = []
    for f in sorted((DATA / "objects").iterdir()):
        if f.suffix not in KINDS:
            continue
        objects.append({"id": f.stem, "file": f"objects/{f.name}", "fnv1a": f"{fnv1a64(f.read_bytes()):016x}"})
    (DATA / "catalog.json").write_text(json.dumps({"objects": objects}, indent=1) + "\n")
    print(f"{len(objects)} objects")


if __name__ == "__main__":
    main()
