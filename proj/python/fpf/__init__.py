"""Proof checker and formality renderer for use_/prove_ tactic scripts."""

import json

from ._core import (
    PROTOCOL_VERSION,
    FpfError,
    ProtocolHandler,
    Session,
    check,
    normalize_formula,
    render,
)


def state(session):
    """State view of a session as a dict."""
    return json.loads(session.state_json())


def request(handler, kind, **fields):
    """Sends one protocol request and returns the decoded response."""
    msg = {"v": PROTOCOL_VERSION, "type": kind, **fields}
    return json.loads(handler.handle(json.dumps(msg)))


__all__ = [
    "PROTOCOL_VERSION",
    "FpfError",
    "ProtocolHandler",
    "Session",
    "check",
    "normalize_formula",
    "render",
    "request",
    "state",
]
