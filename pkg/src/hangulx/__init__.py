"""hangulx: transliteration into extended Hangul jamo, plus glyph and keyboard tools."""

from .jamo import (
    CONSONANTS,
    MODIFIABLE_CONSONANTS,
    SILENT,
    VOWELS,
    ComposeError,
    CompositionState,
    JamoError,
    JamoToken,
    LanguageProfile,
    Modifier,
    Role,
    SyllableBlock,
    ToneMark,
    block,
    compose,
    decompose,
    parse_tokens,
    serialize_tokens,
    to_display_text,
)

__version__ = "0.1.0"
