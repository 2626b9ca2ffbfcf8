"""Secretive coded caching from placement delivery arrays."""

import json as _json

from . import _sccpda
from ._sccpda import DomainError, InternalFault, IoError, gf_inv, gf_mul, mn_pda

__all__ = [
    "DomainError",
    "InternalFault",
    "IoError",
    "audit",
    "gf_inv",
    "gf_mul",
    "mn_pda",
    "rate_point",
    "simulate",
    "table1_row",
    "table2",
    "validate",
]


def validate(pda_text):
    return _json.loads(_sccpda.validate(pda_text))


def simulate(pda_text, N, B, demand, seed=0, plain=False, audit=False, field_poly=None, inject=None):
    if inject is not None and not isinstance(inject, str):
        inject = _json.dumps(inject)
    return _json.loads(
        _sccpda.simulate(pda_text, N, B, list(demand), seed, plain, audit, field_poly, inject)
    )


def audit(pda_text, N, demands=None, unkeyed_slots=(), granted_keys=(), exposed_keyvecs=(), seed=0,
          field_poly=None):
    return _json.loads(
        _sccpda.audit(pda_text, N, demands, list(unkeyed_slots), list(granted_keys),
                      list(exposed_keyvecs), seed, field_poly)
    )


def rate_point(K, N, t=None):
    return _json.loads(_sccpda.rate_point(K, N, t))


def table1_row(row, param, N):
    return _json.loads(_sccpda.table1_row(row, param, N))


def table2(q, m, N):
    return _json.loads(_sccpda.table2(q, m, N))
