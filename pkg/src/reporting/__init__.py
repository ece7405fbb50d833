"""Markdown, HTML and optional PDF verification reports."""
from .combine import combine_outputs
from .report_md import build_verification_report
from .report_pdf import build_html_and_pdf

__all__ = ["combine_outputs", "build_verification_report", "build_html_and_pdf"]
