#!/usr/bin/env python3
"""Regenerate src/unicode_tables.inc from Python's unicodedata.

The C++ code needs four small tables: simple lowercase mappings, canonical
composition pairs (NFC, exclusions already applied), nonzero canonical
combining classes, and merged code point ranges for letters (category L*).
Run from the repository root:

    python3 tools/gen_unicode_tables.py > src/unicode_tables.inc
"""

import sys
import unicodedata

MAX_CP = 0x110000


def lower_pairs():
    out = []
    for cp in range(MAX_CP):
        ch = chr(cp)
        low = ch.lower()
        # keep only 1:1 mappings (simple case folding, no expansions)
        if len(low) == 1 and low != ch:
            out.append((cp, ord(low)))
    return out


def letter_ranges():
    ranges = []
    start = None
    for cp in range(MAX_CP):
        is_letter = unicodedata.category(chr(cp)).startswith("L")
        if is_letter and start is None:
            start = cp
        elif not is_letter and start is not None:
            ranges.append((start, cp - 1))
            start = None
    if start is not None:
        ranges.append((start, MAX_CP - 1))
    return ranges


def combining_classes():
    out = []
    for cp in range(MAX_CP):
        ccc = unicodedata.combining(chr(cp))
        if ccc:
            out.append((cp, ccc))
    return out


def composition_pairs():
    out = []
    for cp in range(MAX_CP):
        if 0xAC00 <= cp <= 0xD7A3:
            continue  # Hangul syllables are composed algorithmically
        d = unicodedata.decomposition(chr(cp))
        if not d or d.startswith("<"):
            continue
        parts = d.split()
        if len(parts) != 2:
            continue
        a, b = int(parts[0], 16), int(parts[1], 16)
        # respects composition exclusions
        if unicodedata.normalize("NFC", chr(a) + chr(b)) == chr(cp):
            out.append((a, b, cp))
    out.sort()
    return out


def emit(rows, name, cols, fmt):
    print(f"static const {cols} {name}[] = {{")
    line = []
    for row in rows:
        line.append(fmt(row))
        if len(line) == 6:
            print("    " + ", ".join(line) + ",")
            line = []
    if line:
        print("    " + ", ".join(line) + ",")
    print("};")
    print()


def main():
    print("// Generated by tools/gen_unicode_tables.py (Unicode data from "
          f"Python {sys.version.split()[0]}, UCD {unicodedata.unidata_version}).")
    print("// Do not edit by hand.")
    print()
    emit(lower_pairs(), "kLowerPairs", "CpPair",
         lambda r: f"{{0x{r[0]:X}, 0x{r[1]:X}}}")
    emit(letter_ranges(), "kLetterRanges", "CpRange",
         lambda r: f"{{0x{r[0]:X}, 0x{r[1]:X}}}")
    emit(combining_classes(), "kCombiningClasses", "CpClass",
         lambda r: f"{{0x{r[0]:X}, {r[1]}}}")
    emit(composition_pairs(), "kComposePairs", "CpCompose",
         lambda r: f"{{0x{r[0]:X}, 0x{r[1]:X}, 0x{r[2]:X}}}")


if __name__ == "__main__":
    main()
