"""Labeled-corpus evaluation: confusion matrix, exact accuracy, comparison table."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .classify import FrameError, Verdict, classify_batch
from .rules import ColorRangeRule


class ManifestError(ValueError):
    """Raised for malformed manifest files."""


class EvaluationError(RuntimeError):
    """Raised when evaluation cannot produce a report (nothing decodable)."""


_LABEL_TOKENS = {
    "bleeding": Verdict.BLEEDING,
    "non_bleeding": Verdict.NON_BLEEDING,
}


@dataclass(frozen=True)
class LabeledSample:
    """One corpus image with its ground-truth label."""

    path: Path
    label: Verdict


def load_manifest(path: str | Path) -> list[LabeledSample]:
    """Parse a manifest of ``<relative-path>,<label>`` lines, order preserved.

    Labels are ``bleeding`` or ``non_bleeding``; ``#`` lines and blank lines
    are skipped; sample paths resolve against the manifest's directory.
    """
    path = Path(path)
    base = path.parent
    samples: list[LabeledSample] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "," not in line:
                raise ManifestError(
                    f"{path}:{lineno}: expected '<path>,<label>', got {line!r}"
                )
            rel, label_token = (part.strip() for part in line.rsplit(",", 1))
            if not rel:
                raise ManifestError(f"{path}:{lineno}: empty sample path")
            if label_token not in _LABEL_TOKENS:
                raise ManifestError(
                    f"{path}:{lineno}: unknown label {label_token!r} "
                    f"(want 'bleeding' or 'non_bleeding')"
                )
            samples.append(LabeledSample(base / rel, _LABEL_TOKENS[label_token]))
    if not samples:
        raise ManifestError(f"{path}: empty manifest")
    return samples


@dataclass(frozen=True)
class EvalReport:
    """Confusion matrix of one rule over one labeled corpus.

    Accuracy is kept exact as a Fraction; formatting is presentation-only.
    """

    rule_id: str
    tp: int
    fp: int
    tn: int
    fn: int
    decode_failures: int

    @property
    def n(self) -> int:
        return self.tp + self.fp + self.tn + self.fn

    @property
    def predicted_bleeding(self) -> int:
        return self.tp + self.fp

    @property
    def predicted_non_bleeding(self) -> int:
        return self.tn + self.fn

    @property
    def correct(self) -> int:
        return self.tp + self.tn

    @property
    def accuracy(self) -> Fraction:
        return Fraction(self.correct, self.n)

    def to_dict(self) -> dict:
        """All report fields as JSON-ready values; counts are exact."""
        return {
            "rule_id": self.rule_id,
            "tp": self.tp,
            "fp": self.fp,
            "tn": self.tn,
            "fn": self.fn,
            "n": self.n,
            "predicted_bleeding": self.predicted_bleeding,
            "predicted_non_bleeding": self.predicted_non_bleeding,
            "correct": self.correct,
            "accuracy": float(self.accuracy),
            "decode_failures": self.decode_failures,
        }


def evaluate(
    samples: Sequence[LabeledSample],
    rule: ColorRangeRule,
    min_count: int = 1,
    workers: int = 1,
) -> EvalReport:
    """Classify every decodable sample and tally against its label.

    Decode failures are counted separately and excluded from ``n``; they are
    not errors of either class.
    """
    if not samples:
        raise ValueError("no samples to evaluate")
    entries = classify_batch(
        [s.path for s in samples], rule, min_count=min_count, workers=workers
    )
    tp = fp = tn = fn = failures = 0
    for sample, entry in zip(samples, entries):
        if isinstance(entry, FrameError):
            failures += 1
        elif entry.verdict is Verdict.BLEEDING:
            if sample.label is Verdict.BLEEDING:
                tp += 1
            else:
                fp += 1
        else:
            if sample.label is Verdict.NON_BLEEDING:
                tn += 1
            else:
                fn += 1
    if tp + fp + tn + fn == 0:
        raise EvaluationError("all samples failed to decode")
    return EvalReport(rule.id, tp, fp, tn, fn, failures)


_TABLE_COLUMNS = (
    "Classification",
    "Bleeding predictions",
    "Non-bleeding predictions",
    "Correct",
    "Accuracy",
)


def _format_accuracy(report: EvalReport) -> str:
    """Percentage with at most one decimal place, from exact counts."""
    tenths = round(Fraction(1000 * report.correct, report.n))
    if tenths % 10 == 0:
        return f"{tenths // 10}%"
    return f"{tenths // 10}.{tenths % 10}%"


def render_table(reports: Sequence[EvalReport]) -> str:
    """One aligned row per rule: predictions per class, correct count, accuracy."""
    if not reports:
        raise ValueError("no reports to render")
    rows = [
        [
            r.rule_id,
            str(r.predicted_bleeding),
            str(r.predicted_non_bleeding),
            str(r.correct),
            _format_accuracy(r),
        ]
        for r in reports
    ]
    widths = [
        max(len(header), *(len(row[i]) for row in rows))
        for i, header in enumerate(_TABLE_COLUMNS)
    ]

    def fmt(cells: Sequence[str]) -> str:
        return "  ".join(cell.ljust(w) for cell, w in zip(cells, widths)).rstrip()

    return "\n".join([fmt(_TABLE_COLUMNS), *(fmt(row) for row in rows)])
