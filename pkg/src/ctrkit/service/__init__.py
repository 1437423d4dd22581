"""HTTP/WebSocket service exposing the toolkit to network clients."""

from ctrkit.service.app import DEFAULT_HOST, DEFAULT_PORT, create_app
from ctrkit.service.sessions import RobotSession, SessionStore

__all__ = ["DEFAULT_HOST", "DEFAULT_PORT", "RobotSession", "SessionStore", "create_app"]
