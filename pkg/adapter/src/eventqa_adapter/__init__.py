"""Inference adapter: runs transformer QA models and writes probability files
conforming to the eventqa provider schema."""

from .align import TokenAlignment, align_sequence
from .models import AdapterModels, load_models
from .requests import AdapterRequest, read_requests
from .runner import infer_batch, write_records

__version__ = "0.1.0"
