"""Mandarin pinyin reader: segmentation into syllables and block building.

Input is romanized pinyin with tones as diacritics (nǐ hǎo) or trailing
digits 1..5 (ni3 hao3); untoned syllables get tone 5 (neutral). Apostrophes
force syllable boundaries (mu'ai vs muai). Each pinyin syllable becomes one
or more syllable blocks; the first block takes the initial consonant, the
rest take the null onset NG, and every block of the syllable carries the
syllable's tone.

The retroflex series maps to modified letterforms: zh -> J*, ch -> CH*,
sh -> S*, r -> R*; f maps to P*, and the rhotic er to the A^ vowel.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass

from .jamo import Role, SyllableBlock, parse_token_atom


class PinyinError(ValueError):
    """Unparseable pinyin; carries the failing position in the cleaned text."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (position {position})")
        self.position = position


@dataclass(frozen=True)
class PinyinSyllable:
    initial: str  # "" for standalone finals
    final: str    # normalized: u-umlaut written v, jqx u rewritten to v
    tone: int     # 1..5

    def __str__(self) -> str:
        return f"{self.initial}{self.final}{self.tone}"


INITIALS = {
    "b": "BB", "p": "P", "m": "M", "f": "P*",
    "d": "D", "t": "T", "n": "N", "l": "R",
    "g": "G", "k": "K", "h": "H",
    "j": "J", "q": "CH", "x": "S",
    "zh": "J*", "ch": "CH*", "sh": "S*", "r": "R*",
    "z": "J", "c": "CH", "s": "SS",
}

# final -> block parts; "NUC", "NUC+CODA", or a rhotic "NUC^"
FINALS = {
    "a": ("A",), "o": ("O",), "e": ("EO",), "i": ("I",),
    "u": ("U",), "v": ("WI",),
    "ai": ("A", "I"), "ei": ("AE", "I"), "ao": ("A", "O"), "ou": ("O", "U"),
    "an": ("A+N",), "en": ("EO+N",),
    "ang": ("A+NG",), "eng": ("EO+NG",), "ong": ("O+NG",),
    "er": ("A^",),
    "ia": ("YA",), "ie": ("I", "E"), "iao": ("YA", "O"), "iu": ("I", "O", "U"),
    "ian": ("YE+N",), "in": ("I+N",),
    "iang": ("YA+NG",), "ing": ("I+NG",), "iong": ("YU+NG",),
    "ua": ("WA",), "uo": ("U", "O"), "uai": ("WA", "I"), "ui": ("U", "I"),
    "uan": ("WA+N",), "un": ("U+N",),
    "uang": ("WA+NG",), "ueng": ("WO+NG",),
    "ve": ("WI", "E"), "van": ("WI", "E+N"), "vn": ("WI+N",),
}

# spellings used when no initial is present
STANDALONE = {
    "yi": ("I",), "ya": ("YA",), "ye": ("YE",), "yao": ("YA", "O"),
    "you": ("YO", "U"), "yan": ("YE+N",), "yin": ("I+N",), "ying": ("I+NG",),
    "yang": ("YA+NG",), "yong": ("YU+NG",), "yo": ("YO",),
    "yu": ("WI",), "yue": ("WI", "E"), "yuan": ("WI", "E+N"), "yun": ("WI+N",),
    "wu": ("U",), "wa": ("WA",), "wo": ("WO",), "wai": ("WA", "I"),
    "wei": ("WE", "I"), "wan": ("WA+N",), "wen": ("WO+N",),
    "wang": ("WA+NG",), "weng": ("WO+NG",),
    "a": ("A",), "o": ("O",), "e": ("EO",),
    "ai": ("A", "I"), "ei": ("AE", "I"), "ao": ("A", "O"), "ou": ("O", "U"),
    "an": ("A+N",), "en": ("EO+N",), "ang": ("A+NG",), "eng": ("EO+NG",),
    "er": ("A^",),
}

# the empty rime: bare i after sibilants is a buzzed vowel, not /i/
EMPTY_RIME_FLAT = frozenset({"z", "c", "s", "r"})       # zi -> EU
EMPTY_RIME_RETRO = frozenset({"zh", "ch", "sh"})        # zhi -> I, EU

_TONE_MARKS = {"̄": 1, "́": 2, "̌": 3, "̆": 3, "̀": 4}
_INITIALS_BY_LENGTH = sorted(INITIALS, key=len, reverse=True)


def _clean(text: str):
    """Strip tone diacritics, lowercase, fold u-umlaut to v.

    Returns the cleaned string and a map from cleaned index to the tone
    taken from the diacritic that followed that character.
    """
    out: list[str] = []
    tones: dict[int, int] = {}
    for ch in unicodedata.normalize("NFD", text.lower()):
        if ch in _TONE_MARKS:
            if out:
                tones[len(out) - 1] = _TONE_MARKS[ch]
            continue
        if ch == "̈":
            if out and out[-1] == "u":
                out[-1] = "v"
            continue
        out.append(ch)
    return "".join(out), tones


def _finals_for(initial: str) -> dict:
    if initial == "":
        return STANDALONE
    if initial in {"j", "q", "x"}:
        # after j/q/x a written u is the umlaut vowel
        table = {k: v for k, v in FINALS.items() if k[0] != "u"}
        for u_key, v_key in (("u", "v"), ("ue", "ve"), ("uan", "van"), ("un", "vn")):
            table[u_key] = FINALS[v_key]
        return table
    return FINALS


def _normalize_final(initial: str, final: str) -> str:
    if initial in {"j", "q", "x"} and final.startswith("u"):
        return "v" + final[1:]
    return final


def _parse_chunk(text: str, pos: int, tones: dict[int, int],
                 offset: int) -> list[PinyinSyllable] | None:
    """Parse one whitespace-free chunk starting at pos; None on dead end."""
    if pos == len(text):
        return []
    if text[pos] == "'":
        if pos + 1 == len(text):
            return None
        return _parse_chunk(text, pos + 1, tones, offset)
    for initial in (*_INITIALS_BY_LENGTH, ""):
        if not text.startswith(initial, pos):
            continue
        start = pos + len(initial)
        finals = _finals_for(initial)
        for final in sorted(finals, key=len, reverse=True):
            if not text.startswith(final, start):
                continue
            end = start + len(final)
            tone = 0
            if end < len(text) and text[end] in "12345":
                tone = int(text[end])
                end += 1
            else:
                for i in range(pos, end):
                    if offset + i in tones:
                        tone = tones[offset + i]
                        break
            rest = _parse_chunk(text, end, tones, offset)
            if rest is None:
                continue
            syllable = PinyinSyllable(
                initial, _normalize_final(initial, final), tone or 5)
            return [syllable] + rest
    return None


def segment_pinyin(text: str) -> list[PinyinSyllable]:
    """Split pinyin text into syllables; whitespace and ' are boundaries."""
    cleaned, tones = _clean(text)
    syllables: list[PinyinSyllable] = []
    pos = 0
    while pos < len(cleaned):
        if cleaned[pos].isspace():
            pos += 1
            continue
        end = pos
        while end < len(cleaned) and not cleaned[end].isspace():
            end += 1
        parsed = _parse_chunk(cleaned[pos:end], 0, tones, pos)
        if parsed is None:
            raise PinyinError(f"unreadable pinyin {cleaned[pos:end]!r}", pos)
        syllables.extend(parsed)
        pos = end
    return syllables


def _block_parts(syllable: PinyinSyllable):
    if syllable.final == "i" and syllable.initial in EMPTY_RIME_FLAT:
        return ("EU",)
    if syllable.final == "i" and syllable.initial in EMPTY_RIME_RETRO:
        return ("I", "EU")
    table = STANDALONE if syllable.initial == "" else FINALS
    return table[syllable.final]


def syllable_blocks(syllable: PinyinSyllable) -> list[SyllableBlock]:
    """One pinyin syllable as blocks: initial on the first, NG after."""
    onset_atom = INITIALS[syllable.initial] if syllable.initial else "NG"
    blocks = []
    for i, part in enumerate(_block_parts(syllable)):
        nucleus_atom, _, coda_atom = part.partition("+")
        blocks.append(SyllableBlock(
            parse_token_atom(onset_atom if i == 0 else "NG", Role.ONSET),
            parse_token_atom(nucleus_atom, Role.NUCLEUS),
            parse_token_atom(coda_atom, Role.CODA) if coda_atom else None,
            syllable.tone,
        ))
    return blocks


def transliterate_pinyin(text: str) -> list[SyllableBlock]:
    """All blocks for a pinyin phrase, in order, as one word."""
    return [b for s in segment_pinyin(text) for b in syllable_blocks(s)]
