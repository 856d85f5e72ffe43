"""Top-K retrieval quality measures and grade-correlation analysis.

Thin wrapper over the compiled core. The heavy lifting (ranking, judging,
dataset validation, correlation analysis) lives in C++; this package re-exports
the operations most useful from Python.
"""

from ._rreval import (
    AlignmentError,
    CrossLinkError,
    DeliveryError,
    GradeParseError,
    InvalidInput,
    IoError,
    JudgeError,
    MockJudge,
    ParseError,
    SchemaError,
    TopKOutcome,
    UndefinedCorrelation,
    __version__,
    alpha_from_beta,
    beta_squared,
    correlate,
    cosine,
    dcg,
    default_alpha_grid,
    f_estimated,
    f_from_pr,
    f_measure,
    generation_prompt,
    labels_from_rank,
    ndcg,
    parse_grade_reply,
    pr_curve,
    precision,
    rank_by_cosine,
    ratio_bucket,
    ratio_bucket_label,
    recall,
    scoring_prompt,
    subset_tag,
    t_measure,
    t_unnormalized,
    validate_dataset,
)

__all__ = [
    "AlignmentError",
    "CrossLinkError",
    "DeliveryError",
    "GradeParseError",
    "InvalidInput",
    "IoError",
    "JudgeError",
    "MockJudge",
    "ParseError",
    "SchemaError",
    "TopKOutcome",
    "UndefinedCorrelation",
    "__version__",
    "alpha_from_beta",
    "beta_squared",
    "correlate",
    "cosine",
    "dcg",
    "default_alpha_grid",
    "f_estimated",
    "f_from_pr",
    "f_measure",
    "generation_prompt",
    "labels_from_rank",
    "ndcg",
    "parse_grade_reply",
    "pr_curve",
    "precision",
    "rank_by_cosine",
    "ratio_bucket",
    "ratio_bucket_label",
    "recall",
    "scoring_prompt",
    "subset_tag",
    "t_measure",
    "t_unnormalized",
    "validate_dataset",
]
