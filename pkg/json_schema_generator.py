import json
from pathlib import Path
from typing import Any, Dict

import jsonschema

from sparsecut.utils.validators import report_schema

SCHEMA_PATH = Path(__file__).parent / "schemas" / "report.schema.json"


def generate_report_schema(path: Path = SCHEMA_PATH) -> Path:
    """
    Write the published JSON schema of the CLI reports

    Args:
        path: Destination file

    Returns:
        Path: The file written
    """
    schema = report_schema()
    jsonschema.Draft202012Validator.check_schema(schema)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(schema, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def validate_report(report: Dict[str, Any], path: Path = SCHEMA_PATH) -> None:
    """
    Validate a report against the published schema

    Raises:
        jsonschema.ValidationError: if the report does not conform
    """
    schema = json.loads(path.read_text(encoding="utf-8")) if path.exists() else report_schema()
    jsonschema.validate(instance=report, schema=schema, cls=jsonschema.Draft202012Validator)


# Example usage
if __name__ == "__main__":
    written = generate_report_schema()
    print(f"Report schema written to '{written}'")
