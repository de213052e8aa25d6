"""The G_s family, the five-vertex catalogue and the exhaustive survey."""

from .reference import (G_A, G_A_BASE, G_A_DOTTED, G_B, G_B_BASE, G_B_DOTTED, G5_5A, GsMatch,
                        GsReference, build_gs_set, catalog_entries, catalog_entry, classify_gs)
from .survey import (AuditRecord, RateReport, SurveyError, SurveySummary, analyze,
                     appendix_b_audit, full_survey, summarize, write_ndjson)

__all__ = [
    "G_A", "G_A_BASE", "G_A_DOTTED", "G_B", "G_B_BASE", "G_B_DOTTED", "G5_5A", "GsMatch",
    "GsReference", "build_gs_set", "catalog_entries", "catalog_entry", "classify_gs",
    "AuditRecord", "RateReport", "SurveyError", "SurveySummary", "analyze", "appendix_b_audit",
    "full_survey", "summarize", "write_ndjson",
]
