"""Event schema: event types, argument roles, and their guideline questions."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import yaml

DEFAULT_ONTOLOGY_RESOURCE = "data/ace_event_ontology.yaml"


class OntologyError(ValueError):
    """Raised when an ontology file fails to parse or validate."""


class WhClass(enum.Enum):
    """Semantic class of a role; decides the WH word of generated questions."""

    PERSON = "person"
    PLACE = "place"
    OTHER = "other"

    @property
    def wh_word(self) -> str:
        return {WhClass.PERSON: "who", WhClass.PLACE: "where", WhClass.OTHER: "what"}[self]


class TriggerStrategy(enum.Enum):
    """Fixed phrases usable as the trigger-detection question."""

    EMPTY = "empty"
    WHAT_IS_THE_TRIGGER = "what-is-the-trigger"
    WHAT_HAPPENED = "what-happened"
    TRIGGER = "trigger"
    ACTION = "action"
    VERB = "verb"


@dataclass(frozen=True)
class RoleSpec:
    role_name: str
    wh_class: WhClass
    guideline_question: str

    def __post_init__(self) -> None:
        if not self.role_name:
            raise OntologyError("role name must be nonempty")
        if not self.guideline_question or not self.guideline_question.endswith("?"):
            raise OntologyError(
                f"role {self.role_name!r}: guideline question must be nonempty and end with '?'"
            )


@dataclass(frozen=True)
class EventType:
    name: str
    roles: tuple[RoleSpec, ...]

    def __post_init__(self) -> None:
        if not self.name:
            raise OntologyError("event type name must be nonempty")
        if not self.roles:
            raise OntologyError(f"event type {self.name!r} has no roles")
        seen = set()
        for r in self.roles:
            if r.role_name in seen:
                raise OntologyError(f"event type {self.name!r}: duplicate role {r.role_name!r}")
            seen.add(r.role_name)


@dataclass(frozen=True)
class EventOntology:
    event_types: tuple[EventType, ...]
    trigger_question_strategy: TriggerStrategy = TriggerStrategy.VERB
    _by_name: dict = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self) -> None:
        by_name = {}
        for et in self.event_types:
            if et.name in by_name:
                raise OntologyError(f"duplicate event type {et.name!r}")
            by_name[et.name] = et
        object.__setattr__(self, "_by_name", by_name)

    @property
    def type_names(self) -> list[str]:
        return [et.name for et in self.event_types]

    @property
    def role_names(self) -> set[str]:
        """Distinct role names across all event types."""
        return {r.role_name for et in self.event_types for r in et.roles}

    def has_type(self, name: str) -> bool:
        return name in self._by_name

    def type_index(self, name: str) -> int:
        """1-based type index used by trigger probability columns (0 = no event)."""
        for i, et in enumerate(self.event_types):
            if et.name == name:
                return i + 1
        raise OntologyError(f"unknown event type {name!r}")

    def role_spec(self, event_type: str, role_name: str) -> RoleSpec:
        for r in lookup_roles(self, event_type):
            if r.role_name == role_name:
                return r
        raise OntologyError(f"event type {event_type!r} has no role {role_name!r}")


def lookup_roles(ont: EventOntology, event_type: str) -> list[RoleSpec]:
    """Roles of the named event type in declared order; unknown type is an error."""
    et = ont._by_name.get(event_type)
    if et is None:
        raise OntologyError(f"unknown event type {event_type!r}")
    return list(et.roles)


def _parse_role(entry: dict, event_type: str) -> RoleSpec:
    if not isinstance(entry, dict):
        raise OntologyError(f"event type {event_type!r}: role entry must be a mapping, got {entry!r}")
    missing = [k for k in ("role", "wh_class", "question") if k not in entry]
    if missing:
        raise OntologyError(f"event type {event_type!r}: role entry missing fields {missing}")
    try:
        wh = WhClass(entry["wh_class"])
    except ValueError:
        raise OntologyError(
            f"event type {event_type!r}, role {entry['role']!r}: "
            f"wh_class must be one of person/place/other, got {entry['wh_class']!r}"
        ) from None
    return RoleSpec(role_name=str(entry["role"]), wh_class=wh, guideline_question=str(entry["question"]))


def load_ontology(path: str | Path) -> EventOntology:
    """Load and validate an ontology file (see docs/formats.md for the schema)."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise OntologyError(f"cannot parse ontology file {path}: {e}") from e
    if not isinstance(doc, dict) or "event_types" not in doc:
        raise OntologyError(f"ontology file {path} must be a mapping with an 'event_types' list")

    strategy = TriggerStrategy(doc.get("trigger_question_strategy", "verb"))
    event_types = []
    for entry in doc["event_types"]:
        if not isinstance(entry, dict) or "event_type" not in entry:
            raise OntologyError(f"event type entry missing 'event_type' field: {entry!r}")
        name = str(entry["event_type"])
        roles = tuple(_parse_role(r, name) for r in entry.get("roles") or [])
        event_types.append(EventType(name=name, roles=roles))
    return EventOntology(event_types=tuple(event_types), trigger_question_strategy=strategy)


def default_ontology_path() -> Path:
    return Path(resources.files("eventqa")) / DEFAULT_ONTOLOGY_RESOURCE


def load_default_ontology() -> EventOntology:
    return load_ontology(default_ontology_path())
