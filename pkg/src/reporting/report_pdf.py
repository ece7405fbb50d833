from __future__ import annotations

from pathlib import Path

from markdown import markdown

# WeasyPrint needs native libraries and can fail with non-ImportError exceptions.
try:
    from weasyprint import HTML  # type: ignore[import-untyped]

    WEASYPRINT_AVAILABLE = True
    WEASYPRINT_IMPORT_ERROR = ""
except Exception as e:
    HTML = None  # type: ignore[assignment]
    WEASYPRINT_AVAILABLE = False
    WEASYPRINT_IMPORT_ERROR = str(e)


STYLE = """
body { font-family: "DejaVu Sans", Arial, sans-serif; font-size: 10.5pt; color: #222; }
.report-container { max-width: 960px; margin: 0 auto; padding: 24px; }
table { border-collapse: collapse; width: 100%; margin: 12px 0; }
th, td { border: 1px solid #ccc; padding: 4px 8px; text-align: left; }
th { background: #f2f2f2; }
code { font-size: 9.5pt; }
.badge-pass { color: #1b5e20; font-weight: bold; }
.badge-fail { color: #b71c1c; font-weight: bold; }
@page { size: A4; margin: 18mm; }
"""

HTML_TEMPLATE = """<!DOCTYPE html>
<html lang="en">
<head>
  <meta charset="utf-8">
  <title>{title}</title>
  <style>{style}</style>
</head>
<body>
  <div class="report-container">
    {content}
  </div>
</body>
</html>
"""


def build_html_from_markdown(md_path: Path, html_path: Path, page_title: str) -> Path:
    if not md_path.exists():
        raise FileNotFoundError(f"Markdown report not found: {md_path}")

    # 'extra' + 'tables' turn the check tables into <table> elements
    content_html = markdown(md_path.read_text(encoding="utf-8"), extensions=["extra", "tables"])
    html_path.parent.mkdir(parents=True, exist_ok=True)
    html_path.write_text(HTML_TEMPLATE.format(title=page_title, style=STYLE, content=content_html), encoding="utf-8")
    print(f"Wrote: {html_path}")
    return html_path


def html_to_pdf(html_path: Path, pdf_path: Path) -> Path | None:
    """Render with WeasyPrint when it imported cleanly; otherwise skip with a notice."""
    if not html_path.exists():
        raise FileNotFoundError(f"HTML report not found: {html_path}")
    if not WEASYPRINT_AVAILABLE:
        print(f"WeasyPrint not available; skipping PDF generation. Reason: {WEASYPRINT_IMPORT_ERROR}")
        return None
    HTML(filename=str(html_path)).write_pdf(str(pdf_path))
    print(f"Wrote: {pdf_path}")
    return pdf_path


def build_html_and_pdf(
    md_path: Path,
    html_path: Path,
    pdf_path: Path | None = None,
    page_title: str = "Dipolar SLE Lab Verification Report",
) -> tuple[Path, Path | None]:
    html_built = build_html_from_markdown(md_path, html_path, page_title)
    pdf_built = html_to_pdf(html_built, pdf_path) if pdf_path is not None else None
    return html_built, pdf_built
