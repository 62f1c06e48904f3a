"""LLM batch annotation and augmentation: prompts, parsing, orchestration."""

from .client import ChatClient, ClientConfig, HttpChatClient, Transcript
from .prompts import (
    ANNOTATION_INSTRUCTIONS,
    AUGMENTATION_INSTRUCTIONS,
    DEFAULT_AUGMENT_COUNT,
    MAX_BATCH_SIZE,
    SEPARATOR,
    AnnotationBatch,
    AugmentationBatch,
    build_annotation_prompt,
    build_augmentation_prompt,
    parse_annotation_prompt,
    parse_annotation_response,
    parse_augmentation_response,
)
from .runner import (
    AnnotationOutcome,
    AugmentationOutcome,
    annotate_corpus,
    augment_corpus,
)

__all__ = [
    "ChatClient",
    "ClientConfig",
    "HttpChatClient",
    "Transcript",
    "AnnotationBatch",
    "AugmentationBatch",
    "AnnotationOutcome",
    "AugmentationOutcome",
    "annotate_corpus",
    "augment_corpus",
    "build_annotation_prompt",
    "build_augmentation_prompt",
    "parse_annotation_prompt",
    "parse_annotation_response",
    "parse_augmentation_response",
    "ANNOTATION_INSTRUCTIONS",
    "AUGMENTATION_INSTRUCTIONS",
    "SEPARATOR",
    "MAX_BATCH_SIZE",
    "DEFAULT_AUGMENT_COUNT",
]
