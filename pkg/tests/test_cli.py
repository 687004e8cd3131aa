"""CLI subcommands: exit codes, stdout purity, and pipe composability."""

import io
import json
from importlib import resources
from pathlib import Path

import pytest

from hangulx.atlas import build_atlas, default_atlas, render_text
from hangulx.cli import main, profile_words
from hangulx.glyphs import GlyphBitmap, find_target_consonant_stroke, thicken_stroke
from hangulx.jamo import parse_tokens
from hangulx.keyboard import (
    blocks_to_keystrokes,
    default_layout,
    load_layout,
    write_session_log,
)

CORPUS_PATH = str(resources.files("hangulx").joinpath("data", "corpus.tsv"))


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def feed_stdin(monkeypatch, text):
    monkeypatch.setattr("sys.stdin", io.StringIO(text))


# ---------------------------------------------------------------------------
# transliterate


def test_transliterate_tokens(capsys):
    code, out, err = run(capsys, "transliterate", "--profile", "it", "casa")
    assert code == 0
    assert out == "GG+A . J+A\n"
    assert err == ""


def test_transliterate_display_defaults_to_tokens_when_piped(capsys):
    code, out, _ = run(capsys, "transliterate", "--profile", "zh", "Nǐ hǎo")
    assert code == 0
    assert out == "N+I3 . H+A3 . NG+O3\n"


def test_transliterate_display_plain_and_marked(capsys):
    _, out, _ = run(capsys, "transliterate", "--profile", "zh", "Nǐ hǎo",
                    "--display", "plain")
    assert out == "니하오\n"
    _, out, _ = run(capsys, "transliterate", "--profile", "en", "V-EH-S-T",
                    "--display", "marked")
    assert out == "베(B*)스트\n"


def test_transliterate_reads_stdin(capsys, monkeypatch):
    feed_stdin(monkeypatch, "casa\n")
    code, out, _ = run(capsys, "transliterate", "--profile", "es")
    assert code == 0
    assert out == "GG+A . SS+A\n"


def test_transliterate_empty_stdin(capsys, monkeypatch):
    feed_stdin(monkeypatch, "")
    code, out, err = run(capsys, "transliterate", "--profile", "it")
    assert code == 0
    assert out == ""
    assert err == ""


def test_transliterate_no_rule_matched_exits_2(capsys):
    code, out, err = run(capsys, "transliterate", "--profile", "it", "xyzzy")
    assert code == 2
    assert out == ""
    assert "position 0" in err


def test_transliterate_unknown_profile_exits_1(capsys):
    code, out, err = run(capsys, "transliterate", "--profile", "xx", "casa")
    assert code == 1
    assert out == ""
    assert "unknown profile" in err


def test_transliterate_option_override(capsys):
    _, out, _ = run(capsys, "transliterate", "--profile", "es", "cero",
                    "--opt", "spanish_variant=latam")
    assert out == "S+E . R+O\n"


def test_transliterate_bad_option_exits_1(capsys):
    code, _, err = run(capsys, "transliterate", "--profile", "es", "cero",
                       "--opt", "nonsense")
    assert code == 1 and "NAME=VALUE" in err
    code, _, err = run(capsys, "transliterate", "--profile", "es", "cero",
                       "--opt", "no_such=x")
    assert code == 1 and "no option" in err
    code, _, err = run(capsys, "transliterate", "--profile", "zh", "ma",
                       "--opt", "a=b")
    assert code == 1 and "takes no options" in err


def test_transliterate_trace_goes_to_stderr(capsys):
    code, out, err = run(capsys, "transliterate", "--profile", "it", "casa",
                         "--trace")
    assert code == 0
    assert out == "GG+A . J+A\n"
    assert "rule line" in err


# ---------------------------------------------------------------------------
# render


def test_render_writes_deterministic_page(capsys, tmp_path, monkeypatch):
    out_path = tmp_path / "page.pbm"
    feed_stdin(monkeypatch, "N+I . H+A . NG+O\n")
    code, out, _ = run(capsys, "render", "--cell", "8", "--out", str(out_path))
    assert code == 0
    assert out == ""
    expected = render_text(parse_tokens("N+I . H+A . NG+O"),
                           default_atlas(), cell=8).to_pbm()
    assert out_path.read_bytes() == expected


def test_transliterate_pipes_into_render(capsys, tmp_path, monkeypatch):
    """transliterate | render equals calling the library end to end."""
    code, tokens, _ = run(capsys, "transliterate", "--profile", "de", "bach")
    assert code == 0
    feed_stdin(monkeypatch, tokens)
    out_path = tmp_path / "page.pbm"
    assert run(capsys, "render", "--out", str(out_path))[0] == 0
    words, _ = profile_words("de", "bach")
    assert out_path.read_bytes() == render_text(words, default_atlas()).to_pbm()


def test_render_bad_token_text_exits_1(capsys, monkeypatch):
    feed_stdin(monkeypatch, "Q+Q+Q\n")
    code, out, err = run(capsys, "render")
    assert code == 1
    assert out == ""
    assert err.startswith("error:")


def test_render_missing_atlas_entry_exits_1(capsys, tmp_path, monkeypatch):
    from hangulx.atlas import packaged_glyph_dir
    bare = tmp_path / "bare"
    build_atlas(packaged_glyph_dir(), {"version": 1, "variants": []}, bare)
    feed_stdin(monkeypatch, "B*+A\n")
    code, _, err = run(capsys, "render", "--atlas", str(bare))
    assert code == 1
    assert "no glyph" in err


# ---------------------------------------------------------------------------
# glyph-modify


def glyph_file(tmp_path):
    page = GlyphBitmap.blank(9, 9).pixels.copy()
    page[2, 1:8] = True
    page[3:7, 6] = True
    path = tmp_path / "g.pbm"
    path.write_bytes(GlyphBitmap(page).to_pbm())
    return path, GlyphBitmap(page)


def test_glyph_modify_thicken(capsys, tmp_path):
    path, glyph = glyph_file(tmp_path)
    out_path = tmp_path / "out.pbm"
    code, out, err = run(capsys, "glyph-modify", str(path),
                         "--kind", "consonant", "--op", "thicken",
                         "--radius", "1", "--out", str(out_path))
    assert code == 0
    assert out == ""
    assert "direction=rightward" in err and "length=" in err
    stroke = find_target_consonant_stroke(glyph)
    assert out_path.read_bytes() == thicken_stroke(glyph, stroke, 1).to_pbm()


def test_glyph_modify_taper(capsys, tmp_path):
    path, _ = glyph_file(tmp_path)
    out_path = tmp_path / "out.pbm"
    code, _, err = run(capsys, "glyph-modify", str(path),
                       "--kind", "vowel", "--op", "taper",
                       "--start", "1", "--end", "2", "--out", str(out_path))
    assert code == 0
    assert "stroke:" in err
    assert out_path.read_bytes().startswith(b"P1\n9 9\n")


def test_glyph_modify_empty_glyph_exits_1(capsys, tmp_path):
    path = tmp_path / "empty.pbm"
    path.write_bytes(GlyphBitmap.blank(4, 4).to_pbm())
    code, _, err = run(capsys, "glyph-modify", str(path),
                       "--kind", "consonant", "--op", "thicken")
    assert code == 1
    assert "error:" in err


# ---------------------------------------------------------------------------
# keyboard-sim


def session_file(tmp_path, text):
    events = blocks_to_keystrokes(parse_tokens(text), default_layout())
    path = tmp_path / "session.log"
    path.write_text(write_session_log(events), encoding="utf-8")
    return path


def test_keyboard_sim_replays_a_session(capsys, tmp_path):
    path = session_file(tmp_path, "B*+E . S+_ . T+_")
    code, out, err = run(capsys, "keyboard-sim", str(path))
    assert code == 0
    assert out == "B*+E . S+_ . T+_\n"
    assert err == ""


def test_keyboard_sim_reads_stdin(capsys, tmp_path, monkeypatch):
    path = session_file(tmp_path, "N+I3 . H+A3 . NG+O3")
    feed_stdin(monkeypatch, path.read_text(encoding="utf-8"))
    code, out, _ = run(capsys, "keyboard-sim")
    assert code == 0
    assert out == "N+I3 . H+A3 . NG+O3\n"


def test_keyboard_sim_custom_layout_flag(capsys, tmp_path):
    layout_path = tmp_path / "layout.json"
    layout_path.write_bytes(
        resources.files("hangulx").joinpath("data", "layout.json").read_bytes())
    path = session_file(tmp_path, "G+A^")
    code, out, _ = run(capsys, "keyboard-sim", str(path),
                       "--layout", str(layout_path))
    assert code == 0
    assert out == "G+A^\n"


def test_keyboard_sim_unknown_key_exits_1(capsys, tmp_path):
    path = tmp_path / "session.log"
    path.write_text('{"t": 0, "code": "KeyEnter", "shift": false}\n')
    code, _, err = run(capsys, "keyboard-sim", str(path))
    assert code == 1
    assert "KeyEnter" in err


# ---------------------------------------------------------------------------
# rules


def test_rules_validate_reports_shape(capsys, tmp_path):
    path = tmp_path / "toy.rules"
    path.write_text("class V = ae\n| k | -> K\n| a | -> NG A\n", encoding="utf-8")
    code, out, _ = run(capsys, "rules", "validate", str(path))
    assert code == 0
    assert out == f"{path}: 2 rules, 1 classes, 0 options\n"


def test_rules_validate_rejects_bad_file(capsys, tmp_path):
    path = tmp_path / "bad.rules"
    path.write_text("| q | -> Q9\n", encoding="utf-8")
    code, out, err = run(capsys, "rules", "validate", str(path))
    assert code == 1
    assert out == ""
    assert "line 1" in err


def test_rules_validate_empty_file(capsys, tmp_path):
    path = tmp_path / "empty.rules"
    path.write_text("", encoding="utf-8")
    code, out, _ = run(capsys, "rules", "validate", str(path))
    assert code == 0
    assert "0 rules" in out


def test_rules_list_names_every_profile(capsys):
    code, out, _ = run(capsys, "rules", "list")
    assert code == 0
    ids = [line.split("\t")[0] for line in out.strip().splitlines()]
    assert ids == ["en", "it", "es", "de", "fr", "ru", "pt", "zh"]
    assert "spanish_variant=castilian|latam" in out


# ---------------------------------------------------------------------------
# corpus


def test_corpus_run_passes_on_shipped_corpus(capsys):
    code, out, _ = run(capsys, "corpus", "run", CORPUS_PATH)
    assert code == 0
    lines = out.strip().splitlines()
    assert all(line.startswith("ok\t") for line in lines[:-1])
    assert lines[-1].endswith(", 0 failed")


def test_corpus_run_reports_failures(capsys, tmp_path):
    path = tmp_path / "corpus.tsv"
    path.write_text("it\tcasa\tGG+A . J+A\nit\tcasa\tWRONG\n", encoding="utf-8")
    code, out, _ = run(capsys, "corpus", "run", str(path))
    assert code == 1
    assert "ok\tit\tcasa" in out
    assert "FAIL\tit\tcasa" in out
    assert out.strip().endswith("1 passed, 1 failed")


def test_corpus_run_rejects_malformed_rows(capsys, tmp_path):
    path = tmp_path / "corpus.tsv"
    path.write_text("just one field\n", encoding="utf-8")
    code, _, err = run(capsys, "corpus", "run", str(path))
    assert code == 1
    assert "bad corpus row" in err


def test_corpus_row_with_dead_end_input_fails_gracefully(capsys, tmp_path):
    path = tmp_path / "corpus.tsv"
    path.write_text("it\txq\tanything\n", encoding="utf-8")
    code, out, _ = run(capsys, "corpus", "run", str(path))
    assert code == 1
    assert "<error:" in out


# ---------------------------------------------------------------------------
# atlas + assets


def test_atlas_build_is_deterministic(capsys, tmp_path):
    code, out, _ = run(capsys, "atlas", "build", "--out", str(tmp_path / "a"))
    assert code == 0
    assert out == f"wrote 72 glyphs to {tmp_path / 'a'}\n"
    assert run(capsys, "atlas", "build", "--out", str(tmp_path / "b"))[0] == 0
    a_files = sorted(p.name for p in (tmp_path / "a").iterdir())
    b_files = sorted(p.name for p in (tmp_path / "b").iterdir())
    assert a_files == b_files
    for name in a_files:
        assert (tmp_path / "a" / name).read_bytes() \
            == (tmp_path / "b" / name).read_bytes()


def test_atlas_build_custom_manifest(capsys, tmp_path):
    manifest = tmp_path / "manifest.json"
    manifest.write_text(json.dumps(
        {"version": 1, "variants": [{"token": "B*", "op": "thicken", "radius": 2}]}))
    code, out, _ = run(capsys, "atlas", "build", "--out", str(tmp_path / "a"),
                       "--manifest", str(manifest))
    assert code == 0
    assert "wrote 42 glyphs" in out


def test_assets_export_bundle(capsys, tmp_path):
    out_dir = tmp_path / "assets"
    code, out, _ = run(capsys, "assets", "export", "--out", str(out_dir))
    assert code == 0
    assert "72 glyphs" in out and "8 profiles" in out
    layout = load_layout((out_dir / "layout.json").read_bytes())
    assert layout.id == "two-set-extended"
    atlas_index = json.loads((out_dir / "atlas" / "atlas.json").read_text())
    assert len(atlas_index["glyphs"]) == 72
    profiles = json.loads((out_dir / "profiles.json").read_text())["profiles"]
    assert [p["id"] for p in profiles] == sorted(
        p["id"] for p in profiles) or len(profiles) == 8
    assert {p["id"] for p in profiles} == {"en", "it", "es", "de", "fr", "ru", "pt", "zh"}


# ---------------------------------------------------------------------------
# argument handling


def test_usage_error_exits_1_not_2(capsys):
    assert main(["no-such-command"]) == 1
    capsys.readouterr()
    assert main([]) == 1
    capsys.readouterr()


def test_help_exits_0(capsys):
    assert main(["--help"]) == 0
    out = capsys.readouterr().out
    assert "transliterate" in out


def test_missing_file_exits_1(capsys):
    code, _, err = run(capsys, "corpus", "run", "/no/such/file.tsv")
    assert code == 1
    assert "error:" in err
