"""Translators from source languages into funcon terms."""

from .imp import ImpTranslator, parse_imp, translate_imp
from .simple import SimpleTranslator, parse_simple, translate_simple

__all__ = ["ImpTranslator", "SimpleTranslator", "parse_imp", "parse_simple", "translate_imp", "translate_simple"]
