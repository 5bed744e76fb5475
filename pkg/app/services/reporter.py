import os
from collections import Counter
from pathlib import Path
from typing import List, Optional

from jinja2 import Environment, FileSystemLoader, select_autoescape

from app.models.schemas import CrosscheckReport, EnumerationRow

TEMPLATE_DIR = Path(__file__).resolve().parent.parent / "templates"


class Reporter:
    """Generates static HTML reports."""

    def __init__(self, template_dir: Optional[str] = None):
        self.env = Environment(
            loader=FileSystemLoader(template_dir or str(TEMPLATE_DIR)),
            autoescape=select_autoescape(["html"]),
        )

    def render_census(self, rows: List[EnumerationRow], max_value: int) -> str:
        by_condition = Counter(row.condition or ("ACM" if row.acm else "not ACM") for row in rows)
        acm = sum(1 for row in rows if row.acm)
        template = self.env.get_template("census.html")
        return template.render(
            rows=rows,
            max_value=max_value,
            method=rows[0].method.value if rows else "",
            total=len(rows),
            acm=acm,
            by_condition=sorted(by_condition.items()),
        )

    def render_crosscheck(self, report: CrosscheckReport) -> str:
        template = self.env.get_template("crosscheck.html")
        return template.render(report=report)

    def generate_census(
        self, rows: List[EnumerationRow], max_value: int, output_path: str = "census.html"
    ) -> str:
        """Render the enumeration census and return the absolute output path."""
        with open(output_path, "w") as f:
            f.write(self.render_census(rows, max_value))
        return os.path.abspath(output_path)

    def generate_crosscheck(
        self, report: CrosscheckReport, output_path: str = "crosscheck.html"
    ) -> str:
        with open(output_path, "w") as f:
            f.write(self.render_crosscheck(report))
        return os.path.abspath(output_path)
