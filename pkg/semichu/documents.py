# Semichu - Documents
#
# Structured text schema for semilattice documents, CLI result envelopes
# and the tuple-literal syntax used for pair sets.

import json
import re
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from .config import OUTPUT_CONFIG
from .exceptions import SchemaError


class SemilatticeDocument(BaseModel):
    """On-disk description of a finite Inf semi-lattice"""
    model_config = ConfigDict(extra='forbid')

    name: str
    elements: List[str]
    covers: List[Tuple[str, str]] = Field(default_factory=list)
    bottom: Optional[str] = None
    star: Optional[Dict[str, str]] = None

    @field_validator('elements')
    @classmethod
    def _ids_unique(cls, value: List[str]) -> List[str]:
        if not value:
            raise ValueError("a semilattice needs at least one element")
        seen = set()
        for element in value:
            if not element or not element.strip():
                raise ValueError("element ids must be non-empty")
            if element in seen:
                raise ValueError(f"duplicate element id '{element}'")
            seen.add(element)
        return value

    @model_validator(mode='after')
    def _references_exist(self) -> 'SemilatticeDocument':
        known = set(self.elements)
        for lower, upper in self.covers:
            for element in (lower, upper):
                if element not in known:
                    raise ValueError(f"unknown element id '{element}' in covers")
        if self.bottom is not None and self.bottom not in known:
            raise ValueError(f"unknown element id '{self.bottom}' as bottom")
        for source, target in (self.star or {}).items():
            for element in (source, target):
                if element not in known:
                    raise ValueError(f"unknown element id '{element}' in star")
            if self.bottom is not None and self.bottom in (source, target):
                raise ValueError("the star cannot map the bottom")
        return self


class ResultEnvelope(BaseModel):
    """Schema-versioned payload written to standard output by the CLI"""
    schema_version: str = OUTPUT_CONFIG['schema_version']
    command: str
    status: str
    result: Dict[str, Any] = Field(default_factory=dict)


def parse_document(data: Union[Dict[str, Any], str]) -> SemilatticeDocument:
    """
    Validate raw document data

    Args:
        data: Parsed JSON mapping or JSON text

    Returns:
        SemilatticeDocument

    Raises:
        SchemaError: on malformed JSON or schema violations
    """
    try:
        if isinstance(data, str):
            return SemilatticeDocument.model_validate_json(data)
        return SemilatticeDocument.model_validate(data)
    except ValidationError as e:
        details = '; '.join(err['msg'] for err in e.errors())
        raise SchemaError(f"invalid semilattice document: {details}") from e


def load_document(path: Union[str, Path]) -> SemilatticeDocument:
    path = Path(path)
    try:
        text = path.read_text(encoding='utf-8')
    except OSError as e:
        raise SchemaError(f"cannot read {path}: {e}") from e
    try:
        json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}: not valid JSON ({e})") from e
    return parse_document(text)


def canonical_json(model: BaseModel) -> str:
    """Deterministic JSON text for a model (byte-identical for equal models)."""
    return model.model_dump_json(indent=OUTPUT_CONFIG['json_indent'], exclude_none=True) + '\n'


def save_document(doc: SemilatticeDocument, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(canonical_json(doc), encoding='utf-8')
    return path


# Tuple literals: "(s1,s2)" and "[(s1,s1),(s2,s2)]"
_PAIR_RE = re.compile(r'\(\s*([^,()\s]+)\s*,\s*([^,()\s]+)\s*\)')


def parse_pair(text: str) -> Tuple[str, str]:
    match = _PAIR_RE.fullmatch(text.strip())
    if not match:
        raise SchemaError(f"malformed pair literal: {text!r}")
    return match.group(1), match.group(2)


def parse_pairset(text: str) -> List[Tuple[str, str]]:
    body = text.strip()
    if not (body.startswith('[') and body.endswith(']')):
        raise SchemaError(f"malformed pair-set literal: {text!r}")
    inner = body[1:-1].strip()
    pairs = [(m.group(1), m.group(2)) for m in _PAIR_RE.finditer(inner)]
    leftover = _PAIR_RE.sub('', inner).replace(',', '').strip()
    if leftover or not pairs:
        raise SchemaError(f"malformed pair-set literal: {text!r}")
    return pairs


def format_pair(pair: Tuple[str, str]) -> str:
    return f"({pair[0]},{pair[1]})"


def format_pairset(pairs) -> str:
    return '[' + ','.join(format_pair(p) for p in pairs) + ']'


def parse_state_list(text: str) -> List[str]:
    states = [part.strip() for part in text.split(',')]
    if not all(states):
        raise SchemaError(f"malformed state list: {text!r}")
    return states
