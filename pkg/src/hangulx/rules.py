"""Ordered context-sensitive rewrite rules over input text, producing jamo tokens.

Rule files are line oriented:

    ; comment
    option spanish_variant = castilian | latam
    class V = aeiou
    LEFT | MATCH | RIGHT -> TOKENS

LEFT and RIGHT are context patterns and may be empty; MATCH must consume at
least one character. Pattern elements are whitespace separated and are either
a declared class name (matches one character from the set), the word-boundary
anchor "#" (LEFT/RIGHT only), or a literal character sequence. TOKENS is a
whitespace separated list of jamo atoms ("GG", "S*", "A^", "_"); it may be
empty for silent letters. A leading "@value" restricts a rule to one option
variant.

Scanning is leftmost, one position at a time; at each position the first rule
in file order that matches wins. Output tokens never re-enter the scan.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field

from .jamo import JamoError, JamoToken, Role, parse_token_atom

CONSONANT_ROLE = Role.ONSET  # rule outputs get provisional roles; compose re-roles


class RuleSyntaxError(ValueError):
    """Malformed rule file; carries the offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class TransliterationError(ValueError):
    """No rule matched; carries the failing position in the prepared text."""

    def __init__(self, text: str, position: int):
        snippet = text[position:position + 12]
        super().__init__(f"no rule matched at position {position}: {snippet!r}")
        self.position = position


@dataclass(frozen=True)
class RewriteRule:
    left: tuple[str, ...]
    match: tuple[str, ...]
    right: tuple[str, ...]
    output: tuple[JamoToken, ...]
    line: int
    variant: tuple[str, str] | None = None  # (option name, required value)


@dataclass(frozen=True)
class RuleApplication:
    position: int
    length: int
    tokens: tuple[JamoToken, ...]
    rule: RewriteRule


@dataclass(frozen=True)
class TraceStep:
    position: int
    line: int


@dataclass(frozen=True)
class TransliterationResult:
    words: tuple[tuple[JamoToken, ...], ...]
    trace: tuple[TraceStep, ...]

    def tokens(self) -> list[JamoToken]:
        return [t for word in self.words for t in word]


@dataclass(frozen=True)
class RuleSet:
    classes: dict[str, frozenset]
    rules: tuple[RewriteRule, ...]
    options: dict[str, str]
    declared_options: dict[str, tuple[str, ...]]

    def with_options(self, **overrides: str) -> "RuleSet":
        options = dict(self.options)
        for name, value in overrides.items():
            allowed = self.declared_options.get(name)
            if allowed is None:
                raise ValueError(f"ruleset has no option {name!r}")
            if value not in allowed:
                raise ValueError(f"option {name}={value!r} not in {allowed}")
            options[name] = value
        return RuleSet(self.classes, self.rules, options, self.declared_options)

    def active(self, rule: RewriteRule) -> bool:
        if rule.variant is None:
            return True
        name, value = rule.variant
        return self.options.get(name) == value

    def output_atoms(self) -> set[str]:
        """Every token atom any variant of this ruleset can emit."""
        from .jamo import token_atom
        return {token_atom(t) for rule in self.rules for t in rule.output}


def _parse_output_atom(atom: str, line: int) -> JamoToken:
    for role in (Role.NUCLEUS, CONSONANT_ROLE):
        try:
            return parse_token_atom(atom, role)
        except JamoError:
            continue
    raise RuleSyntaxError(f"invalid output token {atom!r}", line)


def load_ruleset(text: str) -> RuleSet:
    """Parse rule file text. Raises RuleSyntaxError with a line number."""
    classes: dict[str, frozenset] = {}
    rules: list[RewriteRule] = []
    declared: dict[str, tuple[str, ...]] = {}
    options: dict[str, str] = {}

    for lineno, raw in enumerate(unicodedata.normalize("NFC", text).splitlines(), 1):
        line = raw.split(";", 1)[0].rstrip()
        if not line.strip():
            continue
        if line.startswith("option "):
            body = line[len("option "):]
            if "=" not in body:
                raise RuleSyntaxError("option needs '= value | value'", lineno)
            name, values = body.split("=", 1)
            name = name.strip()
            choices = tuple(v.strip() for v in values.split("|"))
            if not name or any(not c for c in choices):
                raise RuleSyntaxError("malformed option declaration", lineno)
            declared[name] = choices
            options[name] = choices[0]
            continue
        if line.startswith("class "):
            body = line[len("class "):]
            if "=" not in body:
                raise RuleSyntaxError("class needs '= characters'", lineno)
            name, chars = body.split("=", 1)
            name = name.strip()
            chars = chars.strip().replace(" ", "")
            if not name or not chars:
                raise RuleSyntaxError("malformed class declaration", lineno)
            if name in classes:
                raise RuleSyntaxError(f"duplicate class {name!r}", lineno)
            classes[name] = frozenset(chars)
            continue

        variant = None
        if line.lstrip().startswith("@"):
            tag, _, line = line.lstrip()[1:].partition(" ")
            owners = [n for n, vals in declared.items() if tag in vals]
            if len(owners) != 1:
                raise RuleSyntaxError(f"unknown variant tag @{tag}", lineno)
            variant = (owners[0], tag)

        if "->" not in line:
            raise RuleSyntaxError("expected 'LEFT | MATCH | RIGHT -> TOKENS'", lineno)
        patterns, _, out = line.partition("->")
        parts = patterns.split("|")
        if len(parts) != 3:
            raise RuleSyntaxError("rule needs exactly two '|' separators", lineno)
        left, match, right = (tuple(p.split()) for p in parts)
        if not match:
            raise RuleSyntaxError("match pattern must not be empty", lineno)
        if "#" in match:
            raise RuleSyntaxError("word anchor '#' not allowed in the match", lineno)
        for el in left + match + right:
            # scanning lowercases the text, so an uppercase element can only
            # ever match as a class reference; catch the missing declaration
            if el not in classes and any(ch.isupper() for ch in el):
                raise RuleSyntaxError(f"undeclared class {el!r}", lineno)
        output = tuple(_parse_output_atom(a, lineno) for a in out.split())
        rules.append(RewriteRule(left, match, right, output, lineno, variant))

    return RuleSet(classes, tuple(rules), options, declared)


def prepare_text(text: str) -> str:
    """Normalize input for scanning: NFC plus lowercase."""
    return unicodedata.normalize("NFC", text).lower()


def _match_elements_forward(elements, text, pos, classes, at_end_ok=True):
    """Match context/match elements left to right from pos; None if no match."""
    p = pos
    for el in elements:
        if el == "#":
            if not (p == len(text) or text[p].isspace()):
                return None
            continue
        if el in classes:
            if p < len(text) and text[p] in classes[el]:
                p += 1
            else:
                return None
        else:
            if text.startswith(el, p):
                p += len(el)
            else:
                return None
    return p


def _match_elements_backward(elements, text, pos, classes):
    """Match context elements right to left, ending at pos."""
    p = pos
    for el in reversed(elements):
        if el == "#":
            if not (p == 0 or text[p - 1].isspace()):
                return None
            continue
        if el in classes:
            if p > 0 and text[p - 1] in classes[el]:
                p -= 1
            else:
                return None
        else:
            if p - len(el) >= 0 and text.startswith(el, p - len(el)):
                p -= len(el)
            else:
                return None
    return p


def apply_rule_once(text: str, pos: int, ruleset: RuleSet) -> RuleApplication | None:
    """The first active rule matching at pos, or None.

    This is the single-step surface transliterate() folds over; text is
    expected to be prepare_text() output.
    """
    for rule in ruleset.rules:
        if not ruleset.active(rule):
            continue
        end = _match_elements_forward(rule.match, text, pos, ruleset.classes)
        if end is None or end == pos:
            continue
        if _match_elements_backward(rule.left, text, pos, ruleset.classes) is None:
            continue
        if _match_elements_forward(rule.right, text, end, ruleset.classes) is None:
            continue
        return RuleApplication(pos, end - pos, rule.output, rule)
    return None


def transliterate(text: str, ruleset: RuleSet) -> TransliterationResult:
    """Scan text left to right, emitting jamo tokens word by word.

    Whitespace splits words; every non-space character must be consumed by
    some rule or TransliterationError is raised with the position.
    """
    prepared = prepare_text(text)
    words: list[tuple[JamoToken, ...]] = []
    trace: list[TraceStep] = []
    current: list[JamoToken] = []
    pos = 0
    while pos < len(prepared):
        if prepared[pos].isspace():
            if current:
                words.append(tuple(current))
                current = []
            pos += 1
            continue
        app = apply_rule_once(prepared, pos, ruleset)
        if app is None:
            raise TransliterationError(prepared, pos)
        current.extend(app.tokens)
        trace.append(TraceStep(pos, app.rule.line))
        pos += app.length
    if current:
        words.append(tuple(current))
    return TransliterationResult(tuple(words), tuple(trace))
