"""Command line surface: transliterate text, render and modify glyphs,
replay typing sessions, validate rule files, and export demo assets.

Exit codes: 0 success, 1 operational error (bad file, unknown profile,
invalid input), 2 input that no transliteration rule matches (the
position is reported on stderr). Data goes to stdout, everything else
to stderr, so the subcommands compose in pipes.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from .atlas import (
    build_atlas,
    default_atlas,
    load_atlas,
    packaged_glyph_dir,
    render_text,
)
from .glyphs import (
    find_target_consonant_stroke,
    find_target_vowel_stroke,
    load_glyph,
    taper_stroke,
    thicken_stroke,
)
from .jamo import compose, parse_tokens, serialize_tokens, to_display_text
from .keyboard import default_layout, load_layout, read_session_log, replay
from .pinyin import PinyinError, transliterate_pinyin
from .profiles import RULE_PROFILES, available_profiles, get_profile, get_ruleset
from .rules import TransliterationError, load_ruleset, transliterate

DISPLAY_MODES = ("tokens", "plain", "marked")


def profile_words(profile_id: str, text: str, options: dict | None = None):
    """Transliterate under a profile, returning (words of blocks, trace).

    The zh profile reads pinyin; every other profile runs its rule file
    and composes each word's token stream into syllable blocks.
    """
    if profile_id == "zh":
        get_profile(profile_id)
        if options:
            raise ValueError("profile 'zh' takes no options")
        blocks = transliterate_pinyin(text)
        return ([blocks] if blocks else []), ()
    ruleset = get_ruleset(profile_id, **(options or {}))
    result = transliterate(text, ruleset)
    return [compose(list(word)) for word in result.words], result.trace


def format_words(words, display: str) -> str:
    if display == "tokens":
        return serialize_tokens(words)
    return to_display_text(words, display).text


def _read_text(args) -> str:
    if args.text:
        return " ".join(args.text)
    return sys.stdin.read()


def _parse_options(pairs) -> dict:
    options = {}
    for pair in pairs:
        name, eq, value = pair.partition("=")
        if not eq or not name or not value:
            raise ValueError(f"--opt needs NAME=VALUE, got {pair!r}")
        options[name] = value
    return options


def _write_bytes(path: str, data: bytes) -> None:
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        Path(path).write_bytes(data)


# ---------------------------------------------------------------------------
# subcommands


def cmd_transliterate(args) -> int:
    text = _read_text(args)
    if not text.strip():
        return 0
    options = _parse_options(args.opt)
    words, trace = profile_words(args.profile, text, options)
    if args.trace:
        for step in trace:
            print(f"pos {step.position}: rule line {step.line}", file=sys.stderr)
    display = args.display or ("marked" if sys.stdout.isatty() else "tokens")
    print(format_words(words, display))
    return 0


def cmd_render(args) -> int:
    text = _read_text(args).strip()
    words = parse_tokens(text)
    atlas = load_atlas(Path(args.atlas)) if args.atlas else default_atlas()
    page = render_text(words, atlas, cell=args.cell)
    _write_bytes(args.out, page.to_pbm())
    return 0


def cmd_glyph_modify(args) -> int:
    glyph = load_glyph(Path(args.input).read_bytes())
    finder = (find_target_consonant_stroke if args.kind == "consonant"
              else find_target_vowel_stroke)
    stroke = finder(glyph)
    print(f"stroke: direction={stroke.direction} length={len(stroke)}",
          file=sys.stderr)
    if args.op == "thicken":
        result = thicken_stroke(glyph, stroke, args.radius)
    else:
        result = taper_stroke(glyph, stroke, args.start, args.end)
    _write_bytes(args.out, result.to_pbm())
    return 0


def cmd_keyboard_sim(args) -> int:
    if args.layout:
        layout = load_layout(Path(args.layout).read_bytes())
    else:
        layout = default_layout()
    if args.session:
        log_text = Path(args.session).read_text(encoding="utf-8")
    else:
        log_text = sys.stdin.read()
    words = replay(read_session_log(log_text), layout)
    print(serialize_tokens(words))
    return 0


def cmd_rules_validate(args) -> int:
    ruleset = load_ruleset(Path(args.path).read_text(encoding="utf-8"))
    print(f"{args.path}: {len(ruleset.rules)} rules, "
          f"{len(ruleset.classes)} classes, "
          f"{len(ruleset.declared_options)} options")
    return 0


def cmd_rules_list(args) -> int:
    for profile_id in RULE_PROFILES:
        ruleset = get_ruleset(profile_id)
        line = f"{profile_id}\t{len(ruleset.rules)} rules"
        options = ", ".join(
            f"{name}={'|'.join(values)}"
            for name, values in sorted(ruleset.declared_options.items()))
        if options:
            line += f"\t{options}"
        print(line)
    print("zh\tpinyin tables (21 initials)")
    return 0


def _parse_profile_spec(spec: str):
    profile_id, _, option_text = spec.partition(":")
    options = {}
    for pair in option_text.split(","):
        if not pair:
            continue
        name, eq, value = pair.partition("=")
        if not eq:
            raise ValueError(f"bad option {pair!r} in profile spec {spec!r}")
        options[name] = value
    return profile_id, options


def cmd_corpus_run(args) -> int:
    passed = failed = 0
    lines = Path(args.path).read_text(encoding="utf-8").splitlines()
    for lineno, line in enumerate(lines, 1):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) == 3:
            fields.append("tokens")
        if len(fields) != 4 or fields[3] not in DISPLAY_MODES:
            print(f"error: {args.path}:{lineno}: bad corpus row", file=sys.stderr)
            return 1
        spec, text, expected, mode = fields
        profile_id, options = _parse_profile_spec(spec)
        try:
            words, _ = profile_words(profile_id, text, options)
            got = format_words(words, mode)
        except (TransliterationError, PinyinError) as exc:
            got = f"<error: {exc}>"
        if got == expected:
            passed += 1
            print(f"ok\t{spec}\t{text}")
        else:
            failed += 1
            print(f"FAIL\t{spec}\t{text}\texpected {expected!r}, got {got!r}")
    print(f"{passed} passed, {failed} failed")
    return 0 if failed == 0 else 1


def cmd_atlas_build(args) -> int:
    base_dir = Path(args.glyphs) if args.glyphs else packaged_glyph_dir()
    manifest = None
    if args.manifest:
        try:
            manifest = json.loads(Path(args.manifest).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ValueError(f"{args.manifest}: not valid JSON ({exc})") from exc
    atlas = build_atlas(base_dir, manifest, Path(args.out))
    print(f"wrote {len(atlas.keys())} glyphs to {args.out}")
    return 0


def cmd_assets_export(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    atlas = build_atlas(packaged_glyph_dir(), None, out / "atlas")
    layout_bytes = resources.files("hangulx").joinpath("data", "layout.json").read_bytes()
    (out / "layout.json").write_bytes(layout_bytes)
    profiles = [
        {
            "id": profile_id,
            "interpretations": get_profile(profile_id).interpretations,
            "options": get_profile(profile_id).options,
        }
        for profile_id in available_profiles()
    ]
    (out / "profiles.json").write_text(
        json.dumps({"profiles": profiles}, indent=2, sort_keys=True) + "\n",
        encoding="utf-8")
    print(f"exported {len(atlas.keys())} glyphs, layout, "
          f"{len(profiles)} profiles to {out}")
    return 0


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hangulx",
        description="Transliterate text into extended Hangul jamo and work "
                    "with the glyph and keyboard layers.")
    sub = parser.add_subparsers(dest="command", required=True)

    t = sub.add_parser("transliterate", help="text to jamo token text")
    t.add_argument("text", nargs="*", help="input text (stdin when omitted)")
    t.add_argument("--profile", required=True,
                   help="language profile id (en, it, es, de, fr, ru, pt, zh)")
    t.add_argument("--opt", action="append", default=[], metavar="NAME=VALUE",
                   help="ruleset option override, repeatable")
    t.add_argument("--display", choices=DISPLAY_MODES,
                   help="output form; default marked on a terminal, tokens otherwise")
    t.add_argument("--trace", action="store_true",
                   help="log each rule application to stderr")
    t.set_defaults(func=cmd_transliterate)

    r = sub.add_parser("render", help="token text to a PBM page")
    r.add_argument("text", nargs="*", help="token text (stdin when omitted)")
    r.add_argument("--atlas", help="atlas directory (packaged atlas when omitted)")
    r.add_argument("--cell", type=int, default=16, help="cell size in pixels")
    r.add_argument("--out", default="-", help="output file, - for stdout")
    r.set_defaults(func=cmd_render)

    g = sub.add_parser("glyph-modify", help="find and reshape a glyph's target stroke")
    g.add_argument("input", help="input PBM file")
    g.add_argument("--kind", choices=("consonant", "vowel"), required=True)
    g.add_argument("--op", choices=("thicken", "taper"), required=True)
    g.add_argument("--radius", type=int, default=1, help="thicken radius")
    g.add_argument("--start", type=int, default=1, help="taper start width")
    g.add_argument("--end", type=int, default=2, help="taper end width")
    g.add_argument("--out", default="-", help="output file, - for stdout")
    g.set_defaults(func=cmd_glyph_modify)

    k = sub.add_parser("keyboard-sim", help="replay a typing session log")
    k.add_argument("session", nargs="?", help="JSON-lines session log (stdin when omitted)")
    k.add_argument("--layout", help="layout JSON (packaged layout when omitted)")
    k.set_defaults(func=cmd_keyboard_sim)

    ru = sub.add_parser("rules", help="inspect rule files")
    rsub = ru.add_subparsers(dest="action", required=True)
    rv = rsub.add_parser("validate", help="parse a rule file and report its shape")
    rv.add_argument("path")
    rv.set_defaults(func=cmd_rules_validate)
    rl = rsub.add_parser("list", help="list shipped profiles")
    rl.set_defaults(func=cmd_rules_list)

    c = sub.add_parser("corpus", help="run a transliteration corpus")
    csub = c.add_subparsers(dest="action", required=True)
    cr = csub.add_parser("run", help="check every row of a corpus TSV")
    cr.add_argument("path")
    cr.set_defaults(func=cmd_corpus_run)

    a = sub.add_parser("atlas", help="build glyph atlases")
    asub = a.add_subparsers(dest="action", required=True)
    ab = asub.add_parser("build", help="synthesize an atlas directory")
    ab.add_argument("--out", required=True, help="output directory")
    ab.add_argument("--glyphs", help="base glyph directory (packaged when omitted)")
    ab.add_argument("--manifest", help="variant manifest JSON (default plan when omitted)")
    ab.set_defaults(func=cmd_atlas_build)

    s = sub.add_parser("assets", help="export the demo asset bundle")
    ssub = s.add_subparsers(dest="action", required=True)
    se = ssub.add_parser("export", help="write atlas, layout and profiles")
    se.add_argument("--out", required=True, help="output directory")
    se.set_defaults(func=cmd_assets_export)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except (TransliterationError, PinyinError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except KeyError as exc:
        message = exc.args[0] if exc.args else str(exc)
        print(f"error: {message}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
