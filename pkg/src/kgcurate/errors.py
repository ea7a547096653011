"""Error hierarchy shared by all modules.

Every error carries a stable machine code and an HTTP status so the
service layer can map failures onto API responses without a lookup
table. The code strings are part of the API contract.
"""

from __future__ import annotations


class KgError(Exception):
    """Base class for all domain errors."""

    code = "error"
    http_status = 400

    def __init__(self, message: str = "", detail: dict | None = None):
        super().__init__(message or self.__class__.__name__)
        self.message = message or self.__class__.__name__
        self.detail = detail

    def to_api(self) -> dict:
        body = {"code": self.code, "message": self.message}
        if self.detail is not None:
            body["detail"] = self.detail
        return body


# --- validation ------------------------------------------------------------

class EmptyName(KgError):
    code = "empty_name"


class EmptyField(KgError):
    code = "empty_field"


class EmptyDocument(KgError):
    code = "empty_document"


class InvalidConfig(KgError):
    code = "invalid_config"


class InvalidProvenance(KgError):
    code = "invalid_provenance"


class NeedTwoGraphs(KgError):
    code = "need_two_graphs"


class TooFewEntities(KgError):
    code = "too_few_entities"


# --- lookups ---------------------------------------------------------------

class NotFound(KgError):
    code = "not_found"
    http_status = 404


class UnknownGraph(NotFound):
    code = "unknown_graph"


class UnknownDocument(NotFound):
    code = "unknown_document"


class UnknownEntity(NotFound):
    code = "unknown_entity"


class UnknownAccount(NotFound):
    code = "unknown_account"


class NoEntityMatch(NotFound):
    code = "no_entity_match"


# --- state conflicts -------------------------------------------------------

class CertifiedImmutable(KgError):
    code = "certified_immutable"
    http_status = 409


class AlreadyDeleted(KgError):
    code = "already_deleted"
    http_status = 409


class NotDeleted(KgError):
    code = "not_deleted"
    http_status = 409


class DocumentCertified(KgError):
    code = "document_certified"
    http_status = 409


class WrongState(KgError):
    code = "wrong_state"
    http_status = 409


class NotReady(KgError):
    code = "not_ready"
    http_status = 409


class PlanConflict(KgError):
    code = "plan_conflict"
    http_status = 409


class DuplicateUsername(KgError):
    code = "duplicate_username"
    http_status = 409


class ChainBroken(KgError):
    code = "chain_broken"
    http_status = 409


# --- auth ------------------------------------------------------------------

class InvalidCredentials(KgError):
    code = "invalid_credentials"
    http_status = 401


class SessionExpired(KgError):
    code = "session_expired"
    http_status = 401


class Unauthorized(KgError):
    code = "unauthorized"
    http_status = 403


# --- LLM plumbing ----------------------------------------------------------

class LlmUnavailable(KgError):
    code = "llm_unavailable"
    http_status = 502


class MissingPrompt(KgError):
    code = "missing_prompt"
    http_status = 500


class SchemaViolation(KgError):
    """A model response did not conform to a strict JSON schema.

    The offending payload is preserved byte for byte on ``payload`` so
    callers can debug or surface it verbatim.
    """

    code = "schema_violation"
    http_status = 502

    def __init__(self, message: str, payload: str):
        super().__init__(message, detail={"payload": payload})
        self.payload = payload


class ReplayMiss(Exception):
    """A replay fixture had no recorded response for a request.

    Deliberately not a KgError: a miss means the fixture and the code
    disagree, which is a hard failure rather than a runtime condition.
    """
