"""Accounts, sessions, and password-reset tokens.

Accounts persist to their own JSON file, separate from graph data so
exports can never leak credentials. Passwords use salted PBKDF2;
session and reset tokens come from the OS CSPRNG. Every authentication
failure raises the same error so usernames cannot be enumerated.
"""

from __future__ import annotations

import hashlib
import hmac
import json
import secrets
import threading
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from pathlib import Path
from typing import Callable, Optional

from ..errors import DuplicateUsername, InvalidCredentials, SessionExpired, UnknownAccount
from ..textutil import now_iso
from .rbac import Role

DEFAULT_SESSION_TTL_HOURS = 24
DEFAULT_RESET_TTL_HOURS = 1
PBKDF2_ITERATIONS = 60_000


def hash_password(password: str, salt: bytes, iterations: int = PBKDF2_ITERATIONS) -> str:
    digest = hashlib.pbkdf2_hmac("sha256", password.encode("utf-8"), salt, iterations)
    return f"pbkdf2_sha256${iterations}${salt.hex()}${digest.hex()}"


def check_password(password: str, stored: str) -> bool:
    try:
        _, iterations, salt_hex, digest_hex = stored.split("$")
        candidate = hashlib.pbkdf2_hmac(
            "sha256", password.encode("utf-8"), bytes.fromhex(salt_hex), int(iterations))
        return hmac.compare_digest(candidate.hex(), digest_hex)
    except (ValueError, TypeError):
        return False


@dataclass
class Account:
    id: str
    username: str
    password_hash: str
    role: Role
    active: bool = True

    def to_dict(self) -> dict:
        return {"id": self.id, "username": self.username,
                "password_hash": self.password_hash,
                "role": self.role.value, "active": self.active}


@dataclass
class Session:
    token: str
    account_id: str
    username: str
    role: Role
    expires_at: datetime

    def expired(self, now: Optional[datetime] = None) -> bool:
        return (now or datetime.now(timezone.utc)) >= self.expires_at


@dataclass
class ResetToken:
    id: str
    account_id: str
    secret: str
    expires_at: datetime
    used: bool = False
    revoked: bool = False

    def expired(self) -> bool:
        return datetime.now(timezone.utc) >= self.expires_at


class AccountStore:
    """Accounts plus in-memory sessions; restart invalidates sessions."""

    GUEST_USERNAME = "guest"

    def __init__(self, path: Optional[Path] = None,
                 session_ttl_hours: float = DEFAULT_SESSION_TTL_HOURS,
                 pbkdf2_iterations: int = PBKDF2_ITERATIONS):
        self._lock = threading.RLock()
        self._path = Path(path) if path is not None else None
        self._ttl = timedelta(hours=session_ttl_hours)
        self._iterations = pbkdf2_iterations
        self._accounts: dict[str, Account] = {}
        self._by_username: dict[str, str] = {}
        self._sessions: dict[str, Session] = {}
        self._reset_tokens: dict[str, ResetToken] = {}
        self._next_id = 1
        if self._path is not None and self._path.exists():
            self._load()

    # --- persistence ----------------------------------------------------

    def _load(self) -> None:
        data = json.loads(self._path.read_text(encoding="utf-8"))
        self._next_id = data["next_id"]
        for a in data["accounts"]:
            account = Account(id=a["id"], username=a["username"],
                              password_hash=a["password_hash"],
                              role=Role(a["role"]), active=a["active"])
            self._accounts[account.id] = account
            self._by_username[account.username] = account.id

    def _save(self) -> None:
        if self._path is None:
            return
        self._path.parent.mkdir(parents=True, exist_ok=True)
        self._path.write_text(json.dumps({
            "next_id": self._next_id,
            "accounts": [a.to_dict() for a in self._accounts.values()],
        }, indent=2), encoding="utf-8")

    # --- account lifecycle ----------------------------------------------

    def create_account(self, username: str, password: str, role: Role) -> Account:
        with self._lock:
            username = username.strip()
            if not username:
                raise InvalidCredentials("username is empty")
            if username == self.GUEST_USERNAME or username in self._by_username:
                raise DuplicateUsername(f"username taken: {username}")
            account = Account(
                id=f"a{self._next_id}",
                username=username,
                password_hash=hash_password(password, secrets.token_bytes(16),
                                            self._iterations),
                role=role,
            )
            self._next_id += 1
            self._accounts[account.id] = account
            self._by_username[username] = account.id
            self._save()
            return account

    def get_account(self, account_id: str) -> Account:
        with self._lock:
            account = self._accounts.get(account_id)
            if account is None:
                raise UnknownAccount(f"no such account: {account_id}")
            return account

    def deactivate(self, account_id: str) -> Account:
        with self._lock:
            account = self.get_account(account_id)
            account.active = False
            # Kill live sessions so deactivation takes effect immediately.
            self._sessions = {t: s for t, s in self._sessions.items()
                              if s.account_id != account_id}
            self._save()
            return account

    def set_password(self, account_id: str, password: str) -> None:
        with self._lock:
            account = self.get_account(account_id)
            account.password_hash = hash_password(password, secrets.token_bytes(16),
                                                  self._iterations)
            self._save()

    # --- sessions ---------------------------------------------------------

    def authenticate(self, username: str, password: str) -> Session:
        with self._lock:
            account_id = self._by_username.get(username)
            account = self._accounts.get(account_id) if account_id else None
            if account is None or not account.active \
                    or not check_password(password, account.password_hash):
                raise InvalidCredentials("invalid username or password")
            return self._open_session(account.id, account.username, account.role)

    def guest_session(self) -> Session:
        with self._lock:
            return self._open_session("guest", self.GUEST_USERNAME, Role.GUEST)

    def _open_session(self, account_id: str, username: str, role: Role) -> Session:
        session = Session(
            token=secrets.token_urlsafe(32),
            account_id=account_id,
            username=username,
            role=role,
            expires_at=datetime.now(timezone.utc) + self._ttl,
        )
        self._sessions[session.token] = session
        return session

    def resolve_session(self, token: str) -> Session:
        with self._lock:
            session = self._sessions.get(token)
            if session is None:
                raise InvalidCredentials("unknown session token")
            if session.expired():
                del self._sessions[token]
                raise SessionExpired("session expired")
            return session

    # --- reset tokens -----------------------------------------------------

    def issue_reset_token(self, account_id: str,
                          ttl_hours: float = DEFAULT_RESET_TTL_HOURS) -> ResetToken:
        with self._lock:
            self.get_account(account_id)
            token = ResetToken(
                id=f"rt{len(self._reset_tokens) + 1}",
                account_id=account_id,
                secret=secrets.token_urlsafe(32),
                expires_at=datetime.now(timezone.utc) + timedelta(hours=ttl_hours),
            )
            self._reset_tokens[token.id] = token
            return token

    def revoke_reset_token(self, token_id: str) -> ResetToken:
        with self._lock:
            token = self._reset_tokens.get(token_id)
            if token is None:
                raise UnknownAccount(f"no such reset token: {token_id}")
            token.revoked = True
            return token

    def redeem_reset_token(self, secret: str, new_password: str) -> Account:
        with self._lock:
            for token in self._reset_tokens.values():
                if hmac.compare_digest(token.secret, secret):
                    if token.used or token.revoked or token.expired():
                        raise InvalidCredentials("reset token is not valid")
                    token.used = True
                    self.set_password(token.account_id, new_password)
                    return self.get_account(token.account_id)
            raise InvalidCredentials("reset token is not valid")
