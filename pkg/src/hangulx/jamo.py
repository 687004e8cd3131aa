"""Extended jamo inventory, syllable blocks, token serialization and composition.

The jamo model extends the standard Hangul alphabet in three ways:

* consonants may carry a "modified" flag (a modified letterform stands for a
  nearby foreign sound, e.g. modified B for v),
* vowels may carry a "rhotic" flag (vowel + r colouring as one unit),
* a silent vowel fills the nucleus slot of a vowel-less consonant cluster.

Blocks additionally carry a tone digit (0 = untoned, 1..4 = Mandarin tones,
5 = Mandarin neutral tone).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

# ---------------------------------------------------------------------------
# inventory

CONSONANTS = (
    "G", "GG", "N", "D", "DD", "R", "M", "B", "BB", "S",
    "SS", "NG", "J", "JJ", "CH", "K", "T", "P", "H",
)  # ㄱ ㄲ ㄴ ㄷ ㄸ ㄹ ㅁ ㅂ ㅃ ㅅ ㅆ ㅇ ㅈ ㅉ ㅊ ㅋ ㅌ ㅍ ㅎ

VOWELS = (
    "A", "AE", "YA", "YAE", "EO", "E", "YEO", "YE", "O", "WA", "WAE",
    "OE", "YO", "U", "WO", "WE", "WI", "YU", "EU", "UI", "I",
)  # ㅏ ㅐ ㅑ ㅒ ㅓ ㅔ ㅕ ㅖ ㅗ ㅘ ㅙ ㅚ ㅛ ㅜ ㅝ ㅞ ㅟ ㅠ ㅡ ㅢ ㅣ

SILENT = "SIL"  # nucleus placeholder for consonants pronounced without a vowel

CONSONANT_SET = frozenset(CONSONANTS)
VOWEL_SET = frozenset(VOWELS) | {SILENT}

# consonant bases that have a modified letterform
MODIFIABLE_CONSONANTS = frozenset({"D", "R", "B", "S", "NG", "K", "P", "H", "J", "CH"})


class Role(enum.Enum):
    ONSET = "onset"
    NUCLEUS = "nucleus"
    CODA = "coda"


class Modifier(enum.Enum):
    PLAIN = "plain"
    MODIFIED = "modified"   # consonants only
    RHOTIC = "rhotic"       # vowels only, never on the silent vowel


class JamoError(ValueError):
    """Invalid jamo token, block or serialized token text."""


class ComposeError(ValueError):
    """Jamo stream cannot be segmented into syllable blocks."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (position {position})")
        self.message = message
        self.position = position


@dataclass(frozen=True)
class JamoToken:
    """One extended-jamo unit: base + positional role + modifier flag."""

    base: str
    role: Role
    modifier: Modifier = Modifier.PLAIN

    def __post_init__(self):
        if self.role is Role.NUCLEUS:
            if self.base not in VOWEL_SET:
                raise JamoError(f"nucleus must be a vowel, got {self.base!r}")
        else:
            if self.base not in CONSONANT_SET:
                raise JamoError(f"{self.role.value} must be a consonant, got {self.base!r}")
        if self.modifier is Modifier.MODIFIED and self.base not in MODIFIABLE_CONSONANTS:
            raise JamoError(f"{self.base} has no modified letterform")
        if self.modifier is Modifier.RHOTIC:
            if self.role is not Role.NUCLEUS or self.base == SILENT:
                raise JamoError("rhotic flag only applies to non-silent vowels")

    @property
    def is_vowel(self) -> bool:
        return self.role is Role.NUCLEUS


@dataclass(frozen=True)
class ToneMark:
    """Stream-level tone digit; binds to the open block when composing."""

    tone: int

    def __post_init__(self):
        if not 1 <= self.tone <= 5:
            raise JamoError(f"tone must be 1..5, got {self.tone}")


def onset(base: str, modified: bool = False) -> JamoToken:
    return JamoToken(base, Role.ONSET, Modifier.MODIFIED if modified else Modifier.PLAIN)


def nucleus(base: str, rhotic: bool = False) -> JamoToken:
    return JamoToken(base, Role.NUCLEUS, Modifier.RHOTIC if rhotic else Modifier.PLAIN)


def coda(base: str, modified: bool = False) -> JamoToken:
    return JamoToken(base, Role.CODA, Modifier.MODIFIED if modified else Modifier.PLAIN)


@dataclass(frozen=True)
class SyllableBlock:
    """Composed syllable: onset + nucleus + optional coda + tone 0..5."""

    onset: JamoToken
    nucleus: JamoToken
    coda: JamoToken | None = None
    tone: int = 0

    def __post_init__(self):
        if self.onset.role is not Role.ONSET:
            raise JamoError("block onset must have role=onset")
        if self.nucleus.role is not Role.NUCLEUS:
            raise JamoError("block nucleus must have role=nucleus")
        if self.coda is not None and self.coda.role is not Role.CODA:
            raise JamoError("block coda must have role=coda")
        if not 0 <= self.tone <= 5:
            raise JamoError(f"block tone must be 0..5, got {self.tone}")

    def tokens(self) -> tuple[JamoToken, ...]:
        if self.coda is None:
            return (self.onset, self.nucleus)
        return (self.onset, self.nucleus, self.coda)


def block(onset_base: str, nucleus_base: str, coda_base: str | None = None,
          tone: int = 0, *, onset_mod: bool = False, rhotic: bool = False,
          coda_mod: bool = False) -> SyllableBlock:
    """Shorthand block constructor used all over the tests."""
    return SyllableBlock(
        onset(onset_base, onset_mod),
        nucleus(nucleus_base, rhotic),
        None if coda_base is None else coda(coda_base, coda_mod),
        tone,
    )


@dataclass(frozen=True)
class LanguageProfile:
    """How one language reads the modified letterforms.

    interpretations maps a token atom ("B*", "A^") to a short phonetic label.
    Option defaults are per-profile; rule variants are selected on the RuleSet.
    """

    id: str
    interpretations: dict[str, str] = field(default_factory=dict)
    options: dict[str, str] = field(default_factory=dict)


# ---------------------------------------------------------------------------
# token atoms and the serialization grammar
#
#   WORD  := BLOCK (" . " BLOCK)*
#   BLOCK := ONSET "+" NUCLEUS ("+" CODA)? TONE?
#   ONSET, CODA := consonant base, "*" suffix marks the modified form
#   NUCLEUS     := vowel base, "^" suffix marks the rhotic form, "_" = silent
#   TONE  := single digit 1..5
#
# Words are joined with " / ".

def token_atom(token: JamoToken) -> str:
    if token.base == SILENT:
        return "_"
    if token.modifier is Modifier.MODIFIED:
        return token.base + "*"
    if token.modifier is Modifier.RHOTIC:
        return token.base + "^"
    return token.base


def parse_token_atom(text: str, role: Role) -> JamoToken:
    """Parse one serialized atom for a known slot. Raises JamoError."""
    if text == "_":
        if role is not Role.NUCLEUS:
            raise JamoError("silent vowel only fills the nucleus slot")
        return JamoToken(SILENT, Role.NUCLEUS)
    modifier = Modifier.PLAIN
    if text.endswith("*"):
        modifier = Modifier.MODIFIED
        text = text[:-1]
    elif text.endswith("^"):
        modifier = Modifier.RHOTIC
        text = text[:-1]
    if not text:
        raise JamoError("empty token name")
    return JamoToken(text, role, modifier)


def serialize_block(b: SyllableBlock) -> str:
    parts = [token_atom(b.onset), token_atom(b.nucleus)]
    if b.coda is not None:
        parts.append(token_atom(b.coda))
    text = "+".join(parts)
    if b.tone:
        text += str(b.tone)
    return text


def serialize_tokens(words) -> str:
    """Serialize blocks to token text.

    Accepts either a flat block sequence (one word) or a sequence of words.
    """
    words = list(words)
    if not words:
        return ""
    if isinstance(words[0], SyllableBlock):
        words = [words]
    return " / ".join(
        " . ".join(serialize_block(b) for b in word) for word in words
    )


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


def _parse_block(text: str, start: int, whole: str) -> SyllableBlock:
    tone = 0
    if text and text[-1].isdigit():
        tone = int(text[-1])
        if not 1 <= tone <= 5:
            raise JamoError(
                f"tone digit out of range at byte {_byte_offset(whole, start + len(text) - 1)}")
        text = text[:-1]
    parts = text.split("+")
    if len(parts) not in (2, 3) or not all(parts):
        raise JamoError(f"malformed block at byte {_byte_offset(whole, start)}: {text!r}")
    try:
        ons = parse_token_atom(parts[0], Role.ONSET)
        nuc = parse_token_atom(parts[1], Role.NUCLEUS)
        cod = parse_token_atom(parts[2], Role.CODA) if len(parts) == 3 else None
    except JamoError as exc:
        raise JamoError(f"{exc} at byte {_byte_offset(whole, start)}") from None
    return SyllableBlock(ons, nuc, cod, tone)


def parse_tokens(text: str) -> list[list[SyllableBlock]]:
    """Parse serialized token text into words of syllable blocks.

    The grammar is strict: blocks are separated by " . ", words by " / ".
    Errors carry the byte offset of the offending block.
    """
    if text == "":
        return []
    words = []
    pos = 0
    for word_text in text.split(" / "):
        if word_text == "":
            raise JamoError(f"empty word at byte {_byte_offset(text, pos)}")
        blocks = []
        bpos = pos
        for block_text in word_text.split(" . "):
            if block_text == "":
                raise JamoError(f"empty block at byte {_byte_offset(text, bpos)}")
            blocks.append(_parse_block(block_text, bpos, text))
            bpos += len(block_text) + 3
        words.append(blocks)
        pos += len(word_text) + 3
    return words


# ---------------------------------------------------------------------------
# composition automaton
#
# Greedy standard composition: consonant then vowel opens a block, a following
# consonant is held as a coda candidate and re-opens as the next onset when a
# vowel comes after it. The silent vowel behaves like any nucleus. Tone marks
# bind to the block that is open when they arrive.

class CompositionState:
    """Immutable composition state: emitted blocks plus the pending block."""

    __slots__ = ("emitted", "onset", "nucleus", "coda", "tone")

    def __init__(self, emitted=(), onset=None, nucleus=None, coda=None, tone=0):
        self.emitted: tuple[SyllableBlock, ...] = tuple(emitted)
        self.onset: JamoToken | None = onset
        self.nucleus: JamoToken | None = nucleus
        self.coda: JamoToken | None = coda
        self.tone: int = tone

    def _with(self, **kw) -> "CompositionState":
        state = {k: getattr(self, k) for k in self.__slots__}
        state.update(kw)
        return CompositionState(**state)

    def __eq__(self, other):
        if not isinstance(other, CompositionState):
            return NotImplemented
        return all(getattr(self, k) == getattr(other, k) for k in self.__slots__)

    def __repr__(self):
        pend = "+".join(token_atom(t) for t in self.pending_tokens())
        return f"CompositionState(emitted={len(self.emitted)}, pending={pend!r}, tone={self.tone})"

    def pending_tokens(self) -> tuple[JamoToken, ...]:
        return tuple(t for t in (self.onset, self.nucleus, self.coda) if t is not None)

    def _close(self) -> "CompositionState":
        # pre: onset and nucleus are set
        done = SyllableBlock(self.onset, self.nucleus, self.coda, self.tone)
        return CompositionState(self.emitted + (done,))

    def feed(self, item) -> "CompositionState":
        """Feed one JamoToken or ToneMark, returning the next state."""
        if isinstance(item, ToneMark):
            if self.onset is None:
                raise ComposeError("tone mark with no open syllable", 0)
            return self._with(tone=item.tone)
        if not isinstance(item, JamoToken):
            raise TypeError(f"expected JamoToken or ToneMark, got {type(item).__name__}")
        if item.is_vowel:
            nuc = JamoToken(item.base, Role.NUCLEUS, item.modifier)
            if self.onset is None:
                raise ComposeError("vowel without an onset", 0)
            if self.nucleus is None:
                return self._with(nucleus=nuc)
            if self.coda is None:
                raise ComposeError("two vowels in a row", 0)
            # held coda re-opens as the next onset
            reopened = JamoToken(self.coda.base, Role.ONSET, self.coda.modifier)
            closed = self._with(coda=None)._close()
            return closed._with(onset=reopened, nucleus=nuc)
        # consonant
        if self.onset is None:
            return self._with(onset=JamoToken(item.base, Role.ONSET, item.modifier))
        if self.nucleus is None:
            raise ComposeError("consonant cannot follow a lone onset", 0)
        cod = JamoToken(item.base, Role.CODA, item.modifier)
        if self.coda is None:
            return self._with(coda=cod)
        # previous coda is confirmed, this consonant opens the next block
        closed = self._close()
        return closed._with(onset=JamoToken(item.base, Role.ONSET, item.modifier))

    def feed_tone(self, tone: int) -> "CompositionState":
        return self.feed(ToneMark(tone))

    def toggle_rhotic(self) -> "CompositionState":
        """Flip the rhotic flag on the pending nucleus."""
        if self.nucleus is None:
            raise ComposeError("rhotic toggle with no pending vowel", 0)
        if self.nucleus.base == SILENT:
            raise ComposeError("silent vowel carries no rhotic flag", 0)
        flipped = Modifier.PLAIN if self.nucleus.modifier is Modifier.RHOTIC else Modifier.RHOTIC
        return self._with(nucleus=JamoToken(self.nucleus.base, Role.NUCLEUS, flipped))

    def backspace(self) -> "CompositionState":
        """Remove the last pending jamo, or reopen the last emitted block."""
        if self.coda is not None:
            return self._with(coda=None)
        if self.nucleus is not None:
            return self._with(nucleus=None)
        if self.onset is not None:
            return self._with(onset=None, tone=0)
        if self.emitted:
            last = self.emitted[-1]
            return CompositionState(self.emitted[:-1], last.onset, last.nucleus,
                                    last.coda, last.tone)
        return self

    def completed(self) -> SyllableBlock | None:
        """The pending block if it is closable as-is, else None."""
        if self.onset is not None and self.nucleus is not None:
            return SyllableBlock(self.onset, self.nucleus, self.coda, self.tone)
        return None

    def flush(self) -> "CompositionState":
        if self.onset is None and self.nucleus is None:
            return self
        done = self.completed()
        if done is None:
            raise ComposeError("incomplete block at end of stream", 0)
        return CompositionState(self.emitted + (done,))


def compose(stream) -> list[SyllableBlock]:
    """Compose a flat jamo/tone stream into syllable blocks.

    Raises ComposeError carrying the index of the offending stream item.
    """
    state = CompositionState()
    index = 0
    for index, item in enumerate(stream):
        try:
            state = state.feed(item)
        except ComposeError as exc:
            raise ComposeError(exc.message, index) from None
    try:
        state = state.flush()
    except ComposeError as exc:
        raise ComposeError(exc.message, index) from None
    return list(state.emitted)


def decompose(blocks) -> list:
    """Flatten blocks to a jamo/tone stream; compose() inverts this exactly."""
    out = []
    for b in blocks:
        out.extend(b.tokens())
        if b.tone:
            out.append(ToneMark(b.tone))
    return out


# ---------------------------------------------------------------------------
# display text
#
# The nearest plain-Hangul rendering of a block sequence. Modified and rhotic
# flags have no codepoints, so "plain" drops them and "marked" appends an
# ASCII annotation per affected block. The silent vowel falls back to ㅡ.

_CHOSEONG = CONSONANTS  # standard choseong order matches our consonant order
_JUNGSEONG = VOWELS     # standard jungseong order
_JONGSEONG = (
    "", "G", "GG", "GS", "N", "NJ", "NH", "D", "R", "RG", "RM",
    "RB", "RS", "RT", "RP", "RH", "M", "B", "BS", "S", "SS",
    "NG", "J", "CH", "K", "T", "P", "H",
)
# fortis codas without a jongseong codepoint fall back to their plain base
_CODA_FALLBACK = {"DD": "D", "BB": "B", "JJ": "J"}

HANGUL_BASE = 0xAC00
CHOSEONG_STRIDE = 588   # 21 * 28
JUNGSEONG_STRIDE = 28


def block_to_syllable(b: SyllableBlock) -> str:
    """Nearest precomposed Hangul syllable for one block."""
    cho = _CHOSEONG.index(b.onset.base)
    jung_base = "EU" if b.nucleus.base == SILENT else b.nucleus.base
    jung = _JUNGSEONG.index(jung_base)
    jong_base = "" if b.coda is None else _CODA_FALLBACK.get(b.coda.base, b.coda.base)
    jong = _JONGSEONG.index(jong_base)
    return chr(HANGUL_BASE + cho * CHOSEONG_STRIDE + jung * JUNGSEONG_STRIDE + jong)


@dataclass(frozen=True)
class DisplayText:
    text: str
    policy: str


def _block_annotation(b: SyllableBlock) -> str:
    marks = [token_atom(t) for t in b.tokens() if t.modifier is not Modifier.PLAIN]
    if b.tone:
        marks.append(str(b.tone))
    return "({})".format(",".join(marks)) if marks else ""


def to_display_text(words, policy: str = "plain") -> DisplayText:
    """Render blocks as plain-Hangul text under the given display policy.

    policy "plain" drops modifier and tone information; "marked" suffixes each
    affected block with an ASCII annotation, e.g. 베(B*) or 지(J*,1).
    """
    if policy not in ("plain", "marked"):
        raise ValueError(f"unknown display policy {policy!r}")
    words = list(words)
    if words and isinstance(words[0], SyllableBlock):
        words = [words]
    rendered = []
    for word in words:
        chunk = []
        for b in word:
            syl = block_to_syllable(b)
            if policy == "marked":
                syl += _block_annotation(b)
            chunk.append(syl)
        rendered.append("".join(chunk))
    return DisplayText(" ".join(rendered), policy)
