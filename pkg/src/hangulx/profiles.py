"""Shipped language profiles and their rulesets.

A profile pairs an id with the interpretation table that tells readers (and
the rendering layer) what each modified letterform means in that language.
Profiles for rule-driven languages also name a packaged .rules file; the
Mandarin profile ("zh") has no rule file, its pinyin reader lives in
pinyin.py.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .jamo import LanguageProfile
from .rules import RuleSet, load_ruleset

PROFILES: dict[str, LanguageProfile] = {
    "en": LanguageProfile("en", {
        "P*": "f (fan)",
        "B*": "v (van)",
        "S*": "voiceless th (think)",
        "D*": "voiced th (they)",
        "R*": "l (low)",
        "A^": "ar (bar)",
        "O^": "or (for)",
        "E^": "air (there)",
        "I^": "ear (here)",
        "EO^": "er (bird)",
        "WO^": "wor (word)",
    }),
    "it": LanguageProfile("it", {
        "P*": "f (forte)",
    }),
    "es": LanguageProfile("es", {
        "S*": "c/z (cero, Castilian)",
        "P*": "f (fuego)",
    }, options={"spanish_variant": "castilian"}),
    "de": LanguageProfile("de", {
        "K*": "ch (Bach)",
        "B*": "w (Wasser)",
        "P*": "f/v (Vogel)",
    }),
    "fr": LanguageProfile("fr", {
        "NG*": "nasal vowel (bon)",
        "H*": "guttural r (Paris)",
        "P*": "f (France)",
        "B*": "v (vin)",
    }),
    "ru": LanguageProfile("ru", {
        "K*": "kh (хорошо)",
        "B*": "v (вода)",
        "P*": "f, also devoiced v",
    }),
    "pt": LanguageProfile("pt", {
        "H*": "guttural r (Rio)",
        "NG*": "nasal vowel (São)",
        "P*": "f (fado)",
        "B*": "v (você)",
    }, options={"portuguese_variant": "brazil"}),
    "zh": LanguageProfile("zh", {
        "J*": "zh, retroflex (Zhōngguó)",
        "CH*": "ch, retroflex (chá)",
        "S*": "sh, retroflex (Shànghǎi)",
        "R*": "r, retroflex (Rìběn)",
        "P*": "f (fēi)",
        "A^": "er, rhotic vowel (ér)",
    }),
}

RULE_PROFILES = ("en", "it", "es", "de", "fr", "ru", "pt")


def available_profiles() -> tuple[str, ...]:
    return tuple(PROFILES)


def get_profile(profile_id: str) -> LanguageProfile:
    try:
        return PROFILES[profile_id]
    except KeyError:
        raise KeyError(f"unknown profile {profile_id!r}; "
                       f"available: {', '.join(PROFILES)}") from None


@lru_cache(maxsize=None)
def _load_packaged_ruleset(profile_id: str) -> RuleSet:
    path = resources.files("hangulx").joinpath("data", "rules", f"{profile_id}.rules")
    return load_ruleset(path.read_text(encoding="utf-8"))


def get_ruleset(profile_id: str, **options: str) -> RuleSet:
    """The packaged ruleset for a profile, with option overrides applied.

    Raises KeyError for profiles without a rule file (zh transliterates
    through the pinyin reader instead).
    """
    get_profile(profile_id)
    if profile_id not in RULE_PROFILES:
        raise KeyError(f"profile {profile_id!r} has no rule file")
    ruleset = _load_packaged_ruleset(profile_id)
    if options:
        ruleset = ruleset.with_options(**options)
    return ruleset
