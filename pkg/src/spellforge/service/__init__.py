"""HTTP and streaming gateway for the companion UI."""

from .app import create_app
from .sessions import MODES, SESSION_TTL_SECONDS, Session, SessionStore

__all__ = ["MODES", "SESSION_TTL_SECONDS", "Session", "SessionStore", "create_app"]
