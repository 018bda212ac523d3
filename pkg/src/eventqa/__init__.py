"""Event extraction as extractive question answering.

Questions are generated from an event ontology, trigger types and argument
spans are decoded from per-token model probabilities with no-answer
thresholding, and predictions are scored under the standard identification /
classification criteria.
"""

from .arguments import (
    ArgCandidate,
    DecodeConfig,
    DecodeMode,
    ThresholdTable,
    apply_threshold,
    argument_nll,
    calibrate_threshold,
    harvest_candidates,
    zero_rule,
)
from .corpus import (
    DEFAULT_UNSEEN_ROLES,
    Corpus,
    RoleSplit,
    Split,
    load_corpus,
    save_corpus,
    zero_shot_split,
)
from .metrics import EvalReport, PredictionSet, aggregate, score_arguments, score_triggers
from .ontology import (
    EventOntology,
    EventType,
    RoleSpec,
    TriggerStrategy,
    WhClass,
    load_default_ontology,
    load_ontology,
    lookup_roles,
)
from .providers import (
    FileProvider,
    OracleProvider,
    ProbKind,
    ProbRequest,
    PseudorandomProvider,
    SpanProbs,
    TriggerProbs,
)
from .questions import ArgTemplate, ArgTemplateStrategy, Question, argument_question, trigger_question
from .sequences import EncodedSequence, GoldArgument, GoldEvent, Sentence, encode
from .triggers import TriggerPrediction, decode_triggers, trigger_nll

__version__ = "0.1.0"
