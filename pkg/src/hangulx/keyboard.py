"""Two-set Hangul keyboard layer with a Shift layer for the extended jamo.

The base layer is the standard two-set (Dubeolsik) Korean layout. The Shift
layer keeps the usual fortis keys and the ㅒ/ㅖ positions, puts each modified
consonant on its own base key where that Shift slot is free (and on a
mnemonic neighbour where it is not: D* on the ㅌ key, and B*/S*/J* on the
Latin letters B/S/J), fills the remaining vowel slots with the compound
vowels, and reserves Shift+ㅡ for the silent vowel and Shift+ㅗ for the
rhotic toggle. The number row carries tone marks 1..5.

Key events fold through the jamo composition automaton, so typing behaves
like a plain Hangul IME: a consonant after a vowel is held as a coda and
re-opens as the next onset when another vowel follows. Backspace and Space
are editing keys handled by the automaton itself, not layout entries.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .jamo import (
    ComposeError,
    CompositionState,
    JamoError,
    JamoToken,
    Modifier,
    Role,
    SyllableBlock,
    parse_token_atom,
    token_atom,
)
from .pinyin import FINALS, INITIALS, STANDALONE
from .profiles import RULE_PROFILES, get_ruleset

# the standard two-set base layer, KeyA..KeyZ -> jamo atom
DUBEOLSIK_BASE = {
    "KeyQ": "B", "KeyW": "J", "KeyE": "D", "KeyR": "G", "KeyT": "S",
    "KeyY": "YO", "KeyU": "YEO", "KeyI": "YA", "KeyO": "AE", "KeyP": "E",
    "KeyA": "M", "KeyS": "N", "KeyD": "NG", "KeyF": "R", "KeyG": "H",
    "KeyH": "O", "KeyJ": "EO", "KeyK": "A", "KeyL": "I",
    "KeyZ": "K", "KeyX": "T", "KeyC": "CH", "KeyV": "P",
    "KeyB": "YU", "KeyN": "U", "KeyM": "EU",
}

TONE_EMITS = tuple(f"@tone{t}" for t in range(1, 6))
CONTROL_EMITS = frozenset(TONE_EMITS) | {"@rhotic"}

# physical editing keys, always available and never layout entries
EDIT_CODES = frozenset({"Space", "Backspace"})


class KeyboardError(ValueError):
    """Invalid layout file, unmapped key, or unreachable token."""


@dataclass(frozen=True)
class KeyEvent:
    """One key press as recorded in a session log."""

    code: str
    shift: bool = False
    t: float = 0.0


@dataclass(frozen=True)
class KeyboardLayout:
    """Validated key map: (physical key code, shift?) -> emit string.

    An emit is a jamo atom ("G", "B*", "WA", "_") or a control ("@tone1"
    .. "@tone5", "@rhotic"). The map is injective, so the reverse lookup
    used by blocks_to_keystrokes is well defined.
    """

    id: str
    version: int
    keys: dict

    def emit_for(self, code: str, shift: bool) -> str:
        try:
            return self.keys[(code, shift)]
        except KeyError:
            layer = "shift" if shift else "base"
            raise KeyboardError(f"key {code!r} ({layer} layer) not in layout") from None

    def key_for(self, emit: str) -> tuple[str, bool]:
        try:
            return self._reverse()[emit]
        except KeyError:
            raise KeyboardError(f"token {emit!r} not reachable in layout {self.id!r}") from None

    def _reverse(self) -> dict:
        reverse = getattr(self, "_reverse_cache", None)
        if reverse is None:
            reverse = {emit: key for key, emit in self.keys.items()}
            object.__setattr__(self, "_reverse_cache", reverse)
        return reverse

    def emits(self) -> frozenset:
        return frozenset(self.keys.values())


# ---------------------------------------------------------------------------
# layout loading and audits

def _valid_emit(emit: str) -> bool:
    if emit in CONTROL_EMITS:
        return True
    for role in (Role.NUCLEUS, Role.ONSET):
        try:
            # canonical spelling only: "_" for the silent vowel, not "SIL"
            return token_atom(parse_token_atom(emit, role)) == emit
        except JamoError:
            continue
    return False


def _pinyin_atoms() -> set:
    """Every token atom the pinyin reader can emit."""
    atoms = {"NG", "EU", "I"}  # continuation onsets and the empty rimes
    atoms.update(INITIALS.values())
    for table in (FINALS, STANDALONE):
        for parts in table.values():
            for part in parts:
                atoms.update(part.split("+"))
    return atoms


@lru_cache(maxsize=1)
def required_emits() -> frozenset:
    """Atoms and controls any shipped profile needs a layout to reach."""
    atoms = _pinyin_atoms()
    for profile_id in RULE_PROFILES:
        atoms |= get_ruleset(profile_id).output_atoms()
    # pinyin carries a tone on every block; rhotics need the toggle
    controls = set(TONE_EMITS)
    if any(a.endswith("^") for a in atoms):
        controls.add("@rhotic")
    return frozenset(atoms) | frozenset(controls)


def _reachable(emit: str, emits: frozenset) -> bool:
    if emit in emits:
        return True
    # a rhotic vowel can be typed as the plain vowel plus the toggle
    if emit.endswith("^"):
        return emit[:-1] in emits and "@rhotic" in emits
    return False


def load_layout(data) -> KeyboardLayout:
    """Parse and audit layout JSON. Raises KeyboardError on any violation."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise KeyboardError(f"layout is not valid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise KeyboardError("layout must be a JSON object")
    for field_name, kind in (("id", str), ("version", int), ("keys", list)):
        if not isinstance(obj.get(field_name), kind):
            raise KeyboardError(f"layout field {field_name!r} missing or not {kind.__name__}")
    if not obj["keys"]:
        raise KeyboardError("layout has no keys")

    keys = {}
    for i, entry in enumerate(obj["keys"]):
        if not isinstance(entry, dict) or set(entry) != {"code", "shift", "emit"}:
            raise KeyboardError(f"key entry {i} must have exactly code, shift, emit")
        code, shift, emit = entry["code"], entry["shift"], entry["emit"]
        if not isinstance(code, str) or not isinstance(shift, bool) or not isinstance(emit, str):
            raise KeyboardError(f"key entry {i} has wrong field types")
        if code in EDIT_CODES:
            raise KeyboardError(f"{code} is an editing key and cannot be remapped")
        if (code, shift) in keys:
            raise KeyboardError(f"duplicate key assignment for {code} shift={shift}")
        if not _valid_emit(emit):
            raise KeyboardError(f"key entry {i}: unknown emit {emit!r}")
        keys[(code, shift)] = emit

    counts: dict = {}
    for emit in keys.values():
        counts[emit] = counts.get(emit, 0) + 1
    duplicates = sorted(e for e, n in counts.items() if n > 1)
    if duplicates:
        raise KeyboardError(f"emit assigned to more than one key: {', '.join(duplicates)}")

    for code, expected in DUBEOLSIK_BASE.items():
        got = keys.get((code, False))
        if got is not None and got != expected:
            raise KeyboardError(
                f"base layer must match the standard two-set layout: "
                f"{code} emits {got!r}, expected {expected!r}")

    emits = frozenset(keys.values())
    missing = sorted(e for e in required_emits() if not _reachable(e, emits))
    if missing:
        raise KeyboardError(f"required tokens not reachable: {', '.join(missing)}")

    return KeyboardLayout(obj["id"], obj["version"], keys)


@lru_cache(maxsize=1)
def default_layout() -> KeyboardLayout:
    """The packaged two-set-extended layout."""
    path = resources.files("hangulx").joinpath("data", "layout.json")
    return load_layout(path.read_bytes())


# ---------------------------------------------------------------------------
# typing: key events -> blocks

@lru_cache(maxsize=None)
def _typing_token(emit: str) -> JamoToken:
    """The jamo token a key emits; roles are provisional (feed reassigns)."""
    for role in (Role.NUCLEUS, Role.ONSET):
        try:
            return parse_token_atom(emit, role)
        except JamoError:
            continue
    raise KeyboardError(f"unknown emit {emit!r}")


def step(words: tuple, state: CompositionState, event: KeyEvent,
         layout: KeyboardLayout) -> tuple:
    """Apply one key event to (finished words, composition state).

    This is the single-event transition the interactive demo mirrors;
    keystrokes_to_blocks is its fold.
    """
    if event.code == "Space":
        state = state.flush()
        if state.emitted:
            words = words + (state.emitted,)
        return words, CompositionState()
    if event.code == "Backspace":
        if state == CompositionState() and words:
            # the space itself is deleted: the last word reopens
            return words[:-1], CompositionState(words[-1])
        return words, state.backspace()
    emit = layout.emit_for(event.code, event.shift)
    if emit in CONTROL_EMITS:
        if emit == "@rhotic":
            return words, state.toggle_rhotic()
        return words, state.feed_tone(int(emit[-1]))
    return words, state.feed(_typing_token(emit))


def keystrokes_to_blocks(events, layout: KeyboardLayout):
    """Fold key events through the composition automaton.

    Returns (words, state): the words closed by Space separators plus the
    automaton state of the word still being typed. Errors carry the index
    of the offending event.
    """
    words: tuple = ()
    state = CompositionState()
    for index, event in enumerate(events):
        try:
            words, state = step(words, state, event, layout)
        except ComposeError as exc:
            raise ComposeError(exc.message, index) from None
        except KeyboardError as exc:
            raise KeyboardError(f"event {index}: {exc}") from None
    return [list(word) for word in words], state


def replay(events, layout: KeyboardLayout) -> list:
    """Replay a whole session, returning the words it leaves on screen.

    The pending block is included when it is complete; a dangling fragment
    (a lone onset) is dropped, as an IME drops an uncommitted composition.
    """
    words, state = keystrokes_to_blocks(events, layout)
    final = list(state.emitted)
    done = state.completed()
    if done is not None:
        final.append(done)
    if final:
        words.append(final)
    return words


# ---------------------------------------------------------------------------
# typing: blocks -> key events

def blocks_to_keystrokes(words, layout: KeyboardLayout) -> list:
    """Key events that retype the given blocks.

    Accepts a flat block sequence (one word) or a sequence of words; words
    are separated by Space. keystrokes_to_blocks inverts this exactly.
    """
    words = list(words)
    if words and isinstance(words[0], SyllableBlock):
        words = [words]
    events = []

    def press(emit: str):
        code, shift = layout.key_for(emit)
        events.append(KeyEvent(code, shift, float(len(events))))

    for i, word in enumerate(words):
        if i:
            events.append(KeyEvent("Space", False, float(len(events))))
        for b in word:
            press(token_atom(b.onset))
            if b.nucleus.modifier is Modifier.RHOTIC:
                press(b.nucleus.base)
                press("@rhotic")
            else:
                press(token_atom(b.nucleus))
            if b.coda is not None:
                press(token_atom(b.coda))
            if b.tone:
                press(f"@tone{b.tone}")
    return events


# ---------------------------------------------------------------------------
# session logs (shared with the interactive demo)

def read_session_log(text: str) -> list:
    """Parse a JSON-lines session log into key events."""
    events = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError:
            raise KeyboardError(f"session log line {lineno}: invalid JSON") from None
        if not isinstance(obj, dict) or not {"t", "code", "shift"} <= set(obj):
            raise KeyboardError(f"session log line {lineno}: needs t, code, shift")
        if not isinstance(obj["code"], str) or not isinstance(obj["shift"], bool) \
                or not isinstance(obj["t"], (int, float)) or isinstance(obj["t"], bool):
            raise KeyboardError(f"session log line {lineno}: wrong field types")
        events.append(KeyEvent(obj["code"], obj["shift"], float(obj["t"])))
    return events


def write_session_log(events) -> str:
    return "".join(
        json.dumps({"t": e.t, "code": e.code, "shift": e.shift}) + "\n"
        for e in events
    )
