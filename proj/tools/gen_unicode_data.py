#!/usr/bin/env python3
"""Generate src/unicode_data.cpp from the Python unicodedata module.

Emits the tables needed for NFKC normalization (compatibility decomposition,
canonical combining classes, canonical composition pairs), lowercase mappings,
and character-class ranges (alphabetic, whitespace). Hangul syllables are
excluded from the tables; the C++ side handles them algorithmically.

Run from the repository root:
    python3 tools/gen_unicode_data.py > src/unicode_data.cpp
"""

import sys
import unicodedata

MAX_CP = 0x110000
HANGUL_BASE = 0xAC00
HANGUL_END = 0xD7A4  # exclusive


def is_surrogate(cp: int) -> bool:
    return 0xD800 <= cp <= 0xDFFF


def gen_decomp():
    """cp -> full NFKD expansion, for every cp where it differs from identity."""
    entries = []
    buf = []
    for cp in range(MAX_CP):
        if is_surrogate(cp) or HANGUL_BASE <= cp < HANGUL_END:
            continue
        ch = chr(cp)
        d = unicodedata.normalize("NFKD", ch)
        if d != ch:
            cps = [ord(c) for c in d]
            entries.append((cp, len(buf), len(cps)))
            buf.extend(cps)
    return entries, buf


def gen_ccc():
    out = []
    for cp in range(MAX_CP):
        if is_surrogate(cp):
            continue
        c = unicodedata.combining(chr(cp))
        if c:
            out.append((cp, c))
    return out


def gen_compose():
    """Primary canonical composition pairs (a, b) -> composed.

    A pair is included only when the composed character actually recomposes
    under NFC (this filters the composition exclusions)."""
    pairs = []
    for cp in range(MAX_CP):
        if is_surrogate(cp) or HANGUL_BASE <= cp < HANGUL_END:
            continue
        ch = chr(cp)
        raw = unicodedata.decomposition(ch)
        if not raw or raw.startswith("<"):
            continue
        parts = raw.split()
        if len(parts) != 2:
            continue
        a, b = int(parts[0], 16), int(parts[1], 16)
        nfd = unicodedata.normalize("NFD", ch)
        if unicodedata.normalize("NFC", nfd) == ch:
            pairs.append(((a << 32) | b, cp))
    pairs.sort()
    return pairs


def gen_lower():
    """cp -> NFKC(lower(cp)) wherever that differs from cp.

    Folding the result through NFKC keeps normalize() idempotent: every
    codepoint the lowercase table emits is NFKC-stable and lower-stable."""
    entries = []
    buf = []
    for cp in range(MAX_CP):
        if is_surrogate(cp):
            continue
        ch = chr(cp)
        low = ch
        for _ in range(8):
            nxt = unicodedata.normalize("NFKC", low.lower())
            if nxt == low:
                break
            low = nxt
        else:
            raise RuntimeError(f"lower map did not converge at U+{cp:04X}")
        if low != ch:
            cps = [ord(c) for c in low]
            entries.append((cp, len(buf), len(cps)))
            buf.extend(cps)
    # Closure sanity check: outputs must be stable under lower+NFKC.
    mapped = {e[0]: e for e in entries}
    for cp, off, n in entries:
        for out_cp in buf[off : off + n]:
            if out_cp in mapped:
                raise RuntimeError(f"lower map not closed at U+{cp:04X}")
    return entries, buf


def ranges_of(pred):
    out = []
    start = None
    for cp in range(MAX_CP):
        ok = (not is_surrogate(cp)) and pred(chr(cp))
        if ok and start is None:
            start = cp
        elif not ok and start is not None:
            out.append((start, cp - 1))
            start = None
    if start is not None:
        out.append((start, MAX_CP - 1))
    return out


def fmt_u32_list(values, per_line=10):
    lines = []
    for i in range(0, len(values), per_line):
        lines.append("    " + ", ".join(f"0x{v:X}" for v in values[i : i + per_line]) + ",")
    return "\n".join(lines)


def main():
    decomp_entries, decomp_buf = gen_decomp()
    ccc = gen_ccc()
    compose = gen_compose()
    lower_entries, lower_buf = gen_lower()
    alpha = ranges_of(str.isalpha)
    space = ranges_of(str.isspace)

    w = sys.stdout.write
    w("// Generated by tools/gen_unicode_data.py — do not edit.\n")
    w(f"// Unicode data version: {unicodedata.unidata_version}\n\n")
    w('#include "unicode_data.hpp"\n\n')
    w("namespace curate::unidata {\n\n")

    w(f"const DecompEntry kDecomp[] = {{\n")
    for cp, off, n in decomp_entries:
        w(f"    {{0x{cp:X}, {off}, {n}}},\n")
    w("};\n")
    w(f"const std::size_t kDecompCount = {len(decomp_entries)};\n\n")

    w("const char32_t kDecompBuf[] = {\n")
    w(fmt_u32_list(decomp_buf))
    w("\n};\n\n")

    w("const CccEntry kCcc[] = {\n")
    for cp, c in ccc:
        w(f"    {{0x{cp:X}, {c}}},\n")
    w("};\n")
    w(f"const std::size_t kCccCount = {len(ccc)};\n\n")

    w("const ComposeEntry kCompose[] = {\n")
    for key, composed in compose:
        w(f"    {{0x{key:X}ull, 0x{composed:X}}},\n")
    w("};\n")
    w(f"const std::size_t kComposeCount = {len(compose)};\n\n")

    w("const LowerEntry kLower[] = {\n")
    for cp, off, n in lower_entries:
        w(f"    {{0x{cp:X}, {off}, {n}}},\n")
    w("};\n")
    w(f"const std::size_t kLowerCount = {len(lower_entries)};\n\n")

    w("const char32_t kLowerBuf[] = {\n")
    w(fmt_u32_list(lower_buf))
    w("\n};\n\n")

    w("const Range kAlpha[] = {\n")
    for lo, hi in alpha:
        w(f"    {{0x{lo:X}, 0x{hi:X}}},\n")
    w("};\n")
    w(f"const std::size_t kAlphaCount = {len(alpha)};\n\n")

    w("const Range kSpace[] = {\n")
    for lo, hi in space:
        w(f"    {{0x{lo:X}, 0x{hi:X}}},\n")
    w("};\n")
    w(f"const std::size_t kSpaceCount = {len(space)};\n\n")

    w("} // namespace curate::unidata\n")


if __name__ == "__main__":
    main()
