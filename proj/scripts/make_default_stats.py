#!/usr/bin/env python3
"""Writes stats/english-default.json.

Type frequencies are the counts of 195,665 mined English search-query typo
pairs (insertion 64060, substitution 75922, deletion 34580, transposition
21103). Confusion rows and the position distribution are a reconstruction:
rows weight QWERTY neighbours and common phonetic confusions over a small
floor, and the position density rises linearly towards the end of the
string (0.5 + x on [0, 1]). Refit with `typogen stats` when real pairs are
available.
"""
import json
import pathlib

TYPE_COUNTS = {"insertion": 64060, "substitution": 75922, "deletion": 34580, "transposition": 21103}

ROWS = ["1234567890", "qwertyuiop", "asdfghjkl", "zxcvbnm"]
# Horizontal offset of each row relative to the one above, in key widths.
OFFSETS = [0.0, 0.5, 0.75, 1.25]

PHONETIC = ["ae", "ai", "ao", "au", "ei", "eo", "eu", "io", "iu", "ou", "ey", "iy",
            "ck", "cs", "sz", "kq", "mn", "bp", "dt", "gj", "fv", "bv", "gk", "sx", "cq"]

NEIGHBOUR_WEIGHT = 1.0
PHONETIC_WEIGHT = 0.5
FLOOR = 0.005


def key_positions():
    pos = {}
    for r, row in enumerate(ROWS):
        for c, ch in enumerate(row):
            pos[ch] = (r, c + OFFSETS[r])
    return pos


def confusion():
    pos = key_positions()
    keys = sorted(pos)
    phonetic = {(a, b) for a, b in PHONETIC} | {(b, a) for a, b in PHONETIC}
    rows = {}
    for src in keys:
        r0, x0 = pos[src]
        weights = {}
        for dst in keys:
            if dst == src:
                continue
            r1, x1 = pos[dst]
            w = FLOOR
            if abs(r1 - r0) <= 1 and abs(x1 - x0) <= 1.0:
                w += NEIGHBOUR_WEIGHT * (1.0 if r1 == r0 else 0.6)
            if (src, dst) in phonetic:
                w += PHONETIC_WEIGHT
            # Digits and letters rarely stand in for each other.
            if src.isdigit() != dst.isdigit():
                w = FLOOR * 0.1 if w == FLOOR else w * 0.2
            weights[dst] = w
        total = sum(weights.values())
        rows[src] = {k: v / total for k, v in weights.items()}
    return rows


def position_cdf():
    # CDF of density 0.5 + x evaluated at each percentile's upper edge.
    return [round(0.5 * x + 0.5 * x * x, 12) for x in ((i + 1) / 100 for i in range(100))]


def main():
    total = sum(TYPE_COUNTS.values())
    stats = {
        "version": 1,
        "provenance": "type_freq from 195665 mined English search-query typo pairs; confusion rows "
                      "reconstructed from QWERTY adjacency and phonetic pairs; position density 0.5 + x. "
                      "Generated by scripts/make_default_stats.py.",
        "sample_count": total,
        "type_freq": {k: v / total for k, v in TYPE_COUNTS.items()},
        "confusion": confusion(),
        "position_cdf": position_cdf(),
    }
    out = pathlib.Path(__file__).resolve().parent.parent / "stats" / "english-default.json"
    out.parent.mkdir(exist_ok=True)
    out.write_text(json.dumps(stats, indent=1) + "\n")


if __name__ == "__main__":
    main()
