"""Question instantiation for trigger detection and argument extraction."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .ontology import RoleSpec, TriggerStrategy

TRIGGER_PHRASES = {
    TriggerStrategy.EMPTY: "",
    TriggerStrategy.WHAT_IS_THE_TRIGGER: "what is the trigger",
    TriggerStrategy.WHAT_HAPPENED: "what happened",
    TriggerStrategy.TRIGGER: "trigger",
    TriggerStrategy.ACTION: "action",
    TriggerStrategy.VERB: "verb",
}


class ArgTemplate(enum.Enum):
    ROLE_NAME = "role-name"
    TYPE_PLUS_ROLE = "type-role"
    ANNOTATION_GUIDELINE = "guideline"


@dataclass(frozen=True)
class ArgTemplateStrategy:
    kind: ArgTemplate
    append_trigger: bool = False

    @property
    def tag(self) -> str:
        """Stable string form, e.g. 'guideline+trigger'."""
        return self.kind.value + ("+trigger" if self.append_trigger else "")

    @classmethod
    def from_tag(cls, tag: str) -> "ArgTemplateStrategy":
        base, _, suffix = tag.partition("+")
        if suffix not in ("", "trigger"):
            raise ValueError(f"bad argument strategy tag {tag!r}")
        return cls(kind=ArgTemplate(base), append_trigger=suffix == "trigger")


@dataclass(frozen=True)
class Question:
    text: str
    role_name: str = ""  # empty for trigger questions
    strategy: ArgTemplateStrategy | TriggerStrategy | None = None


def trigger_question(strategy: TriggerStrategy) -> Question:
    """The fixed literal phrase for a trigger-detection question."""
    return Question(text=TRIGGER_PHRASES[strategy], strategy=strategy)


def argument_question(
    role: RoleSpec,
    strategy: ArgTemplateStrategy,
    trigger_token: str | None = None,
) -> Question:
    """Instantiate the question asked for one argument role.

    Three templates: the bare role name; "<WH word> is the <role>?" with the WH
    word chosen by the role's semantic class; or the guideline question verbatim.
    With ``append_trigger``, " in <trigger>" is spliced in before the terminal
    question mark (appended as-is for the bare role name, which has none).
    """
    if strategy.append_trigger and not trigger_token:
        raise ValueError(f"role {role.role_name!r}: append_trigger requires a trigger token")

    if strategy.kind is ArgTemplate.ROLE_NAME:
        text = role.role_name
    elif strategy.kind is ArgTemplate.TYPE_PLUS_ROLE:
        text = f"{role.wh_class.wh_word.capitalize()} is the {role.role_name.lower()}?"
    else:
        text = role.guideline_question

    if strategy.append_trigger:
        if text.endswith("?"):
            text = f"{text[:-1].rstrip()} in {trigger_token}?"
        else:
            text = f"{text} in {trigger_token}"
    return Question(text=text, role_name=role.role_name, strategy=strategy)
