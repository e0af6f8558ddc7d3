"""Homeostatic babbling-robot learner with differential-outcomes feedback."""

from .feedback import FeedbackCondition
from .homeostasis import NEEDS, NeedKind
from .perception import OBJECTS, ObjectKind
from .session import EpisodeLog, SessionConfig, run_episode

__all__ = [
    "NEEDS",
    "OBJECTS",
    "EpisodeLog",
    "FeedbackCondition",
    "NeedKind",
    "ObjectKind",
    "SessionConfig",
    "run_episode",
]

__version__ = "0.1.0"
