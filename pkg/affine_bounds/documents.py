from __future__ import annotations

import logging
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .algebra import FiniteAlgebra, Symbol
from .exceptions import AlgebraDocumentError

logger = logging.getLogger(__name__)


class OperationDocument(BaseModel):
    model_config = ConfigDict(extra='forbid', strict=True)

    symbol: str = Field(min_length=1)
    arity: int = Field(ge=0)
    table: List[int]


class AlgebraDocument(BaseModel):
    """
    The algebra file: a UTF-8 JSON object with the carrier size, one table
    per operation (row-major) and an optional Choe order. Unknown fields
    are rejected.
    """
    model_config = ConfigDict(extra='forbid', strict=True)

    name: str = ''
    carrier: int = Field(ge=1)
    operations: List[OperationDocument] = []
    choe_order: Optional[List[str]] = None

    def to_algebra(self) -> FiniteAlgebra:
        return FiniteAlgebra(self.carrier,
                             [(Symbol(op.symbol, op.arity), op.table) for op in self.operations],
                             name=self.name)

    @classmethod
    def from_algebra(cls, algebra: FiniteAlgebra, choe_order=None) -> 'AlgebraDocument':
        return cls(
            name=algebra.name,
            carrier=algebra.carrier_size,
            operations=[OperationDocument(symbol=s.name, arity=s.arity, table=list(t))
                        for s, t in algebra.operations],
            choe_order=list(choe_order) if choe_order is not None else None,
        )


def _describe(error: ValidationError):
    messages = []
    for e in error.errors():
        location = '.'.join(str(part) for part in e['loc'])
        messages.append('%s: %s' % (location, e['msg']) if location else e['msg'])
    return '; '.join(messages)


def parse_algebra_document(text) -> AlgebraDocument:
    """
    Validates an algebra file given as text or bytes.

    JSON syntax errors report their line and column, schema errors the
    path of the offending field.
    """
    try:
        return AlgebraDocument.model_validate_json(text)
    except ValidationError as e:
        raise AlgebraDocumentError('Invalid algebra document: %s' % _describe(e))


def load_algebra(text):
    """Returns (FiniteAlgebra, choe_order or None) from an algebra file's content."""
    document = parse_algebra_document(text)
    return document.to_algebra(), document.choe_order


def load_algebra_file(path):
    try:
        with open(path, 'rb') as f:
            content = f.read()
    except OSError as e:
        raise AlgebraDocumentError('Can not read algebra file "%s": %s' % (path, e.strerror or e))
    logger.debug('Loading algebra from %s (%d bytes)', path, len(content))
    return load_algebra(content)


def dump_algebra(algebra: FiniteAlgebra, choe_order=None) -> str:
    return AlgebraDocument.from_algebra(algebra, choe_order).model_dump_json(indent=2, exclude_none=True)


class Report(BaseModel):
    """
    The result of one CLI verb: `ok`, `fail` for a negative verdict,
    `error` for an input problem.
    """
    status: Literal['ok', 'fail', 'error']
    verb: str
    payload: Dict[str, Any] = {}

    @property
    def exit_code(self):
        return {'ok': 0, 'fail': 1, 'error': 2}[self.status]
