from .accounts import Account, AccountStore, ResetToken, Session
from .rbac import Action, MUTATING_ACTIONS, ROLE_PERMISSIONS, Role, is_allowed, require
from .review import (
    DEFAULT_COVERAGE_THRESHOLD,
    ReadinessReport,
    aggregate_judgments,
    certify_document,
    meta_finalize_triple,
    readiness,
    submit_judgment,
)
from .verifier import (
    NO_EVIDENCE_PLACEHOLDER,
    VerifierAssessment,
    parse_assessment,
    run_verifier,
)

__all__ = [
    "Account",
    "AccountStore",
    "Action",
    "DEFAULT_COVERAGE_THRESHOLD",
    "MUTATING_ACTIONS",
    "NO_EVIDENCE_PLACEHOLDER",
    "ROLE_PERMISSIONS",
    "ReadinessReport",
    "ResetToken",
    "Role",
    "Session",
    "VerifierAssessment",
    "aggregate_judgments",
    "certify_document",
    "is_allowed",
    "meta_finalize_triple",
    "parse_assessment",
    "readiness",
    "require",
    "run_verifier",
    "submit_judgment",
]
