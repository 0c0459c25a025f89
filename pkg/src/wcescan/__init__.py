"""Bleeding triage for capsule-endoscopy frames via RGB color-range rules.

Pixels are tested against axis-aligned boxes in 24-bit color space; a frame
is bleeding when enough pixels fall inside the box. The package also ships
a deterministic synthetic-corpus generator whose labels are exact ground
truth for the bundled presets, and an evaluation harness that reports the
full confusion matrix with exact accuracy.
"""

from .classify import (
    CSV_HEADER,
    FrameError,
    FrameVerdict,
    Verdict,
    classify_batch,
    classify_frame,
    count_matching,
    write_records,
)
from .evaluate import (
    EvalReport,
    EvaluationError,
    LabeledSample,
    ManifestError,
    evaluate,
    load_manifest,
    render_table,
)
from .frames import DecodeError, Frame, decode_frame, write_ppm
from .rules import (
    PRESETS,
    ChannelBound,
    ColorRangeRule,
    Rgb8,
    RuleFormatError,
    parse_rule,
    pixel_matches,
    preset_purity,
    preset_range_ratio,
    rule_volume,
    serialize_rule,
)
from .synth import GenSpec, gen_bleeding_frame, gen_corpus, gen_mucosa_frame

__version__ = "0.1.0"

__all__ = [
    "CSV_HEADER",
    "ChannelBound",
    "ColorRangeRule",
    "DecodeError",
    "EvalReport",
    "EvaluationError",
    "Frame",
    "FrameError",
    "FrameVerdict",
    "GenSpec",
    "LabeledSample",
    "ManifestError",
    "PRESETS",
    "Rgb8",
    "RuleFormatError",
    "Verdict",
    "classify_batch",
    "classify_frame",
    "count_matching",
    "decode_frame",
    "evaluate",
    "gen_bleeding_frame",
    "gen_corpus",
    "gen_mucosa_frame",
    "load_manifest",
    "parse_rule",
    "pixel_matches",
    "preset_purity",
    "preset_range_ratio",
    "render_table",
    "rule_volume",
    "serialize_rule",
    "write_ppm",
    "write_records",
]
