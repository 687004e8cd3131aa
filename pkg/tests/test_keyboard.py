"""Keyboard layout audits, the typing automaton, and session round-trips."""

import json
import random

import pytest

from hangulx.jamo import (
    ComposeError,
    CompositionState,
    MODIFIABLE_CONSONANTS,
    Modifier,
    SILENT,
    block,
    nucleus,
    onset,
    parse_tokens,
    serialize_tokens,
)
from hangulx.keyboard import (
    KeyboardError,
    KeyEvent,
    KeyboardLayout,
    blocks_to_keystrokes,
    default_layout,
    keystrokes_to_blocks,
    load_layout,
    read_session_log,
    replay,
    required_emits,
    step,
    write_session_log,
)

# independent copy of the standard two-set layout, straight from the
# plain Korean keyboard: consonants on the left hand, vowels on the right
STANDARD_TWO_SET = {
    "KeyQ": "B", "KeyW": "J", "KeyE": "D", "KeyR": "G", "KeyT": "S",
    "KeyY": "YO", "KeyU": "YEO", "KeyI": "YA", "KeyO": "AE", "KeyP": "E",
    "KeyA": "M", "KeyS": "N", "KeyD": "NG", "KeyF": "R", "KeyG": "H",
    "KeyH": "O", "KeyJ": "EO", "KeyK": "A", "KeyL": "I",
    "KeyZ": "K", "KeyX": "T", "KeyC": "CH", "KeyV": "P",
    "KeyB": "YU", "KeyN": "U", "KeyM": "EU",
}

# standard Shift fortis and ㅒ/ㅖ placements that must survive extension
STANDARD_SHIFT = {
    "KeyQ": "BB", "KeyW": "JJ", "KeyE": "DD", "KeyR": "GG", "KeyT": "SS",
    "KeyO": "YAE", "KeyP": "YE",
}


def events(*presses):
    """Shorthand: 'KeyS' for a plain press, '+KeyB' for shift."""
    out = []
    for i, p in enumerate(presses):
        shift = p.startswith("+")
        out.append(KeyEvent(p.lstrip("+"), shift, float(i)))
    return out


def typed(*presses):
    return serialize_tokens(replay(events(*presses), default_layout()))


def layout_json(mutate=None):
    """The packaged layout as a dict, optionally modified."""
    obj = json.loads(default_layout_bytes())
    if mutate:
        mutate(obj)
    return json.dumps(obj).encode()


def default_layout_bytes():
    from importlib import resources
    return resources.files("hangulx").joinpath("data", "layout.json").read_bytes()


# ---------------------------------------------------------------------------
# layout loading and audits


def test_default_layout_loads():
    layout = default_layout()
    assert layout.id == "two-set-extended"
    assert layout.version == 1
    assert len(layout.keys) == 57


def test_base_layer_is_the_standard_two_set_layout():
    layout = default_layout()
    for code, atom in STANDARD_TWO_SET.items():
        assert layout.emit_for(code, False) == atom, code


def test_standard_shift_positions_survive():
    layout = default_layout()
    for code, atom in STANDARD_SHIFT.items():
        assert layout.emit_for(code, True) == atom, code


def test_every_modified_consonant_is_on_the_shift_layer():
    shift_emits = {e for (c, s), e in default_layout().keys.items() if s}
    assert {c + "*" for c in MODIFIABLE_CONSONANTS} <= shift_emits


def test_silent_vowel_and_rhotic_toggle_placement():
    layout = default_layout()
    assert layout.emit_for("KeyM", True) == "_"      # Shift + ㅡ
    assert layout.emit_for("KeyH", True) == "@rhotic"  # Shift + ㅗ


def test_tone_marks_on_the_number_row():
    layout = default_layout()
    for t in range(1, 6):
        assert layout.emit_for(f"Digit{t}", False) == f"@tone{t}"


def test_required_emits_cover_all_shipped_profiles():
    required = required_emits()
    assert {"B*", "NG*", "K*", "S*", "_"} <= required
    assert {"@tone1", "@tone5", "@rhotic"} <= required
    emits = default_layout().emits()
    assert all(e in emits or e[:-1] in emits for e in required)


def test_duplicate_emit_rejected():
    data = b'{"id": "x", "version": 1, "keys": [' \
           b'{"code": "KeyK", "shift": false, "emit": "A"},' \
           b'{"code": "KeyL", "shift": false, "emit": "A"}]}'
    with pytest.raises(KeyboardError, match="more than one key"):
        load_layout(data)


def test_duplicate_key_position_rejected():
    def twice(obj):
        obj["keys"].append(dict(obj["keys"][0]))
    with pytest.raises(KeyboardError, match="duplicate key assignment"):
        load_layout(layout_json(twice))


def test_empty_and_malformed_json_rejected():
    with pytest.raises(KeyboardError, match="missing or not"):
        load_layout(b"{}")
    with pytest.raises(KeyboardError, match="not valid JSON"):
        load_layout(b"riff raff")
    with pytest.raises(KeyboardError, match="must be a JSON object"):
        load_layout(b"[1, 2]")


def test_nonstandard_base_layer_rejected():
    def swap(obj):
        for entry in obj["keys"]:
            if not entry["shift"] and entry["code"] == "KeyQ":
                entry["emit"] = "J"
            elif not entry["shift"] and entry["code"] == "KeyW":
                entry["emit"] = "B"
    with pytest.raises(KeyboardError, match="standard two-set"):
        load_layout(layout_json(swap))


def test_missing_required_token_rejected():
    def drop_b_mod(obj):
        obj["keys"] = [e for e in obj["keys"] if e["emit"] != "B*"]
    with pytest.raises(KeyboardError, match="not reachable: B\\*"):
        load_layout(layout_json(drop_b_mod))


def test_missing_rhotic_toggle_rejected():
    def drop(obj):
        obj["keys"] = [e for e in obj["keys"] if e["emit"] != "@rhotic"]
    with pytest.raises(KeyboardError, match="not reachable"):
        load_layout(layout_json(drop))


@pytest.mark.parametrize("emit", ["G*", "SIL", "A*", "_^", "@tone9", "q"])
def test_invalid_emit_rejected(emit):
    def bad(obj):
        obj["keys"][0]["emit"] = emit
    with pytest.raises(KeyboardError, match="unknown emit"):
        load_layout(layout_json(bad))


def test_editing_keys_cannot_be_remapped():
    def space(obj):
        obj["keys"].append({"code": "Space", "shift": False, "emit": "A"})
    with pytest.raises(KeyboardError, match="editing key"):
        load_layout(layout_json(space))


# ---------------------------------------------------------------------------
# typing


def test_typing_a_greeting():
    # ni hao: the held consonant re-opens as the next onset on each vowel
    assert typed("KeyS", "KeyL", "KeyG", "KeyK", "KeyD", "KeyH") \
        == "N+I . H+A . NG+O"


def test_shift_key_emits_modified_onset():
    _, state = keystrokes_to_blocks(events("+KeyB"), default_layout())
    assert state.onset == onset("B", modified=True)
    assert typed("+KeyB", "KeyP", "KeyT", "KeyM", "KeyX", "+KeyM") \
        == "B*+E . S+EU . T+_"


def test_empty_event_list():
    words, state = keystrokes_to_blocks([], default_layout())
    assert words == []
    assert state == CompositionState()


def test_tone_key_binds_to_the_open_block():
    assert typed("KeyS", "KeyL", "Digit3") == "N+I3"
    # the tone stays with its block through resyllabification
    assert typed("KeyQ", "KeyK", "Digit3", "KeyR", "KeyK") == "B+A3 . G+A"


def test_tone_with_no_open_block_errors():
    with pytest.raises(ComposeError):
        keystrokes_to_blocks(events("Digit1"), default_layout())


def test_rhotic_toggle_flips_the_pending_vowel():
    assert typed("KeyR", "KeyK", "+KeyH") == "G+A^"
    _, state = keystrokes_to_blocks(
        events("KeyR", "KeyK", "+KeyH", "+KeyH"), default_layout())
    assert state.nucleus == nucleus("A")


def test_rhotic_toggle_on_silent_vowel_errors():
    with pytest.raises(ComposeError):
        keystrokes_to_blocks(events("KeyT", "+KeyM", "+KeyH"), default_layout())


def test_silent_vowel_key():
    assert typed("KeyT", "+KeyM", "KeyX", "+KeyM", "KeyF", "KeyL", "KeyX", "+KeyM") \
        == "S+_ . T+_ . R+I . T+_"


def test_space_separates_words():
    assert typed("KeyS", "KeyL", "Space", "KeyG", "KeyK") == "N+I / H+A"


def test_repeated_and_leading_space_yield_no_empty_words():
    assert typed("Space", "KeyS", "KeyL", "Space", "Space") == "N+I"


def test_space_with_dangling_onset_errors():
    with pytest.raises(ComposeError):
        keystrokes_to_blocks(events("KeyS", "Space"), default_layout())


def test_backspace_edits_the_pending_block():
    # after ni-h-a the pending block is H+A; backspace peels it jamo by jamo
    layout = default_layout()
    _, state = keystrokes_to_blocks(
        events("KeyS", "KeyL", "KeyG", "KeyK", "Backspace"), layout)
    assert state.pending_tokens() == (onset("H"),)
    _, state = keystrokes_to_blocks(
        events("KeyS", "KeyL", "KeyG", "KeyK", "Backspace", "Backspace"), layout)
    assert state.pending_tokens() == ()
    assert len(state.emitted) == 1


def test_backspace_reopens_the_last_emitted_block():
    layout = default_layout()
    _, state = keystrokes_to_blocks(
        events("KeyS", "KeyL", "KeyG", "KeyK", "Backspace", "Backspace",
               "Backspace"), layout)
    assert state.emitted == ()
    assert state.pending_tokens() == (onset("N"), nucleus("I"))


def test_backspace_deletes_a_word_separator():
    got = typed("KeyS", "KeyL", "Space", "Backspace", "KeyG", "KeyK")
    assert got == "N+I . H+A"


def test_backspace_on_nothing_is_a_no_op():
    assert typed("Backspace", "KeyS", "KeyL") == "N+I"


def test_fix_a_typo_with_backspace():
    # g-a, rhotic, a stray coda k, backspace, then ng-i
    got = typed("KeyR", "KeyK", "+KeyH", "KeyZ", "Backspace", "KeyD", "KeyL")
    assert got == "G+A^ . NG+I"


def test_replay_keeps_a_held_coda_candidate():
    # a consonant typed after a vowel closes into the block's coda slot
    assert typed("KeyS", "KeyL", "KeyG") == "N+I+H"


def test_replay_drops_a_dangling_onset():
    assert typed("KeyR") == ""
    assert typed("KeyS", "KeyL", "Space", "KeyR") == "N+I"


def test_unknown_key_code_errors_with_event_index():
    with pytest.raises(KeyboardError, match="event 1.*KeyEnter"):
        keystrokes_to_blocks(events("KeyS", "KeyEnter"), default_layout())


def test_unmapped_shift_position_errors():
    with pytest.raises(KeyboardError, match="shift layer"):
        keystrokes_to_blocks(events("+Digit1"), default_layout())


def test_keystrokes_equal_stepping_one_event_at_a_time():
    layout = default_layout()
    evs = events("KeyS", "KeyL", "Digit3", "Space", "+KeyB", "KeyP",
                 "Backspace", "KeyK", "+KeyH", "KeyD", "KeyH")
    words, state = (), CompositionState()
    for e in evs:
        words, state = step(words, state, e, layout)
    batch_words, batch_state = keystrokes_to_blocks(evs, layout)
    assert [list(w) for w in words] == batch_words
    assert state == batch_state


# ---------------------------------------------------------------------------
# blocks -> keys -> blocks round-trips


ROUND_TRIP_TEXTS = [
    "N+I . H+A . NG+O",
    "N+I3 . H+A3 . NG+O3",
    "B*+E . S+_ . T+_",
    "S+_ . T+_ . R+I . T+_",
    "GG+A . J+A / GG+A . SS+A",
    "J*+O+NG1 . G+U2 . NG+O2",
    "NG+A^2",
    "B+O+NG* . J+U . H*+_",
    "M+I+R* . K+_",
    "S*+A+NG4 . H+A3 . NG+I3",
]


@pytest.mark.parametrize("text", ROUND_TRIP_TEXTS)
def test_round_trip_over_corpus_words(text):
    layout = default_layout()
    words = parse_tokens(text)
    evs = blocks_to_keystrokes(words, layout)
    assert replay(evs, layout) == words
    assert serialize_tokens(replay(evs, layout)) == text


def test_round_trip_accepts_a_flat_block_list():
    layout = default_layout()
    blocks = parse_tokens("N+I . H+A")[0]
    evs = blocks_to_keystrokes(blocks, layout)
    assert replay(evs, layout) == [blocks]


def random_block(rng):
    onsets = list("GNDRMBSJKTPH") + ["GG", "DD", "BB", "SS", "NG", "JJ", "CH"]
    vowels = ["A", "AE", "YA", "EO", "E", "O", "WA", "OE", "YO", "U",
              "WO", "WI", "YU", "EU", "UI", "I", "YAE", "YE", "WE", "WAE", "YEO"]
    onset_base = rng.choice(onsets)
    onset_mod = onset_base in MODIFIABLE_CONSONANTS and rng.random() < 0.3
    silent = rng.random() < 0.15
    nucleus_base = SILENT if silent else rng.choice(vowels)
    rhotic = not silent and rng.random() < 0.2
    coda_base = rng.choice(onsets) if rng.random() < 0.4 else None
    coda_mod = (coda_base in MODIFIABLE_CONSONANTS) and rng.random() < 0.3
    tone = rng.choice([0, 0, 0, 1, 2, 3, 4, 5])
    return block(onset_base, nucleus_base, coda_base, tone,
                 onset_mod=onset_mod, rhotic=rhotic, coda_mod=coda_mod)


def test_round_trip_over_random_words():
    layout = default_layout()
    rng = random.Random(20240211)
    for _ in range(300):
        words = [[random_block(rng) for _ in range(rng.randint(1, 4))]
                 for _ in range(rng.randint(1, 3))]
        evs = blocks_to_keystrokes(words, layout)
        assert replay(evs, layout) == words


def test_unreachable_token_reported():
    tiny = KeyboardLayout("tiny", 1, {("KeyK", False): "A"})
    with pytest.raises(KeyboardError, match="not reachable in layout"):
        blocks_to_keystrokes([block("G", "A")], tiny)


# ---------------------------------------------------------------------------
# session logs


def test_session_log_round_trip():
    evs = events("KeyS", "KeyL", "+KeyH", "Space", "Digit3")
    text = write_session_log(evs)
    assert read_session_log(text) == evs
    assert all(line for line in text.strip().split("\n"))
    assert json.loads(text.splitlines()[0]) == {"t": 0.0, "code": "KeyS", "shift": False}


def test_session_log_blank_lines_skipped():
    text = '{"t": 0, "code": "KeyS", "shift": false}\n\n' \
           '{"t": 1, "code": "KeyL", "shift": false}\n'
    assert len(read_session_log(text)) == 2


@pytest.mark.parametrize("line,message", [
    ("not json", "invalid JSON"),
    ('{"code": "KeyS", "shift": false}', "needs t, code, shift"),
    ('{"t": 0, "code": 5, "shift": false}', "wrong field types"),
    ('{"t": 0, "code": "KeyS", "shift": "yes"}', "wrong field types"),
    ('{"t": true, "code": "KeyS", "shift": false}', "wrong field types"),
])
def test_session_log_rejects_bad_lines(line, message):
    with pytest.raises(KeyboardError, match=message):
        read_session_log(line)


def test_session_log_reports_line_number():
    text = '{"t": 0, "code": "KeyS", "shift": false}\nbroken\n'
    with pytest.raises(KeyboardError, match="line 2"):
        read_session_log(text)
