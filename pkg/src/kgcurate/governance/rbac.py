"""Role-based permission matrix.

Four roles, each mapped to an explicit set of action kinds; the matrix
is total by construction (an action either is or is not in the set).
Admins run account lifecycle only and hold no graph-mutation rights,
which keeps operational duties separate from content authority.
"""

from __future__ import annotations

from enum import Enum

from ..errors import Unauthorized


class Role(str, Enum):
    GUEST = "guest"
    EXPERT = "expert"
    META_EXPERT = "meta_expert"
    ADMIN = "admin"


class Action(str, Enum):
    READ = "read"
    RUN_TASK = "run_task"
    EXPORT = "export"
    READ_DELETED = "read_deleted"
    READ_AUDIT = "read_audit"
    INGEST = "ingest"
    TRIPLE_CREATE = "triple_create"
    TRIPLE_UPDATE = "triple_update"
    TRIPLE_DELETE = "triple_delete"
    TRIPLE_RESTORE = "triple_restore"
    SUBMIT_JUDGMENT = "submit_judgment"
    RUN_VERIFIER = "run_verifier"
    APPLY_MERGE = "apply_merge"
    FINALIZE_TRIPLE = "finalize_triple"
    CERTIFY_DOCUMENT = "certify_document"
    MANAGE_ACCOUNTS = "manage_accounts"


MUTATING_ACTIONS = frozenset({
    Action.INGEST,
    Action.TRIPLE_CREATE,
    Action.TRIPLE_UPDATE,
    Action.TRIPLE_DELETE,
    Action.TRIPLE_RESTORE,
    Action.SUBMIT_JUDGMENT,
    Action.APPLY_MERGE,
    Action.FINALIZE_TRIPLE,
    Action.CERTIFY_DOCUMENT,
    Action.MANAGE_ACCOUNTS,
})

_GUEST = frozenset({Action.READ, Action.RUN_TASK, Action.EXPORT})
_EXPERT = _GUEST | frozenset({
    Action.READ_DELETED,
    Action.READ_AUDIT,
    Action.INGEST,
    Action.TRIPLE_CREATE,
    Action.TRIPLE_UPDATE,
    Action.TRIPLE_DELETE,
    Action.TRIPLE_RESTORE,
    Action.SUBMIT_JUDGMENT,
    Action.RUN_VERIFIER,
    Action.APPLY_MERGE,
})
_META_EXPERT = _EXPERT | frozenset({Action.FINALIZE_TRIPLE, Action.CERTIFY_DOCUMENT})
_ADMIN = _GUEST | frozenset({Action.READ_AUDIT, Action.MANAGE_ACCOUNTS})

ROLE_PERMISSIONS: dict[Role, frozenset[Action]] = {
    Role.GUEST: _GUEST,
    Role.EXPERT: _EXPERT,
    Role.META_EXPERT: _META_EXPERT,
    Role.ADMIN: _ADMIN,
}


def is_allowed(role: Role, action: Action) -> bool:
    return action in ROLE_PERMISSIONS[role]


def require(role: Role, action: Action) -> None:
    if not is_allowed(role, action):
        raise Unauthorized(f"role {role.value} may not {action.value}")
