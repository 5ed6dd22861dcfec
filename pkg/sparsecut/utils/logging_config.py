import json
import logging
from datetime import datetime
from pathlib import Path
from typing import Any

import numpy as np


def _jsonable(value: Any) -> Any:
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (np.integer, np.floating)):
        return value.item()
    if isinstance(value, (set, frozenset)):
        return sorted(value)
    return str(value)


class JSONRunHandler:
    """Collects pipeline events and the final report in one JSON file."""

    def __init__(self, json_file):
        self.json_file = json_file
        self.run_data = {
            "timestamp": datetime.now().isoformat(),
            "events": [],
            "content": {
                "graph": "",
                "config": {},
                "stages": [],
                "report": {},
            }
        }

    def log_event(self, event_type: str, data: dict):
        self.run_data["events"].append({
            "timestamp": datetime.now().isoformat(),
            "type": event_type,
            "data": data
        })
        self._save_json()

    def update_content(self, key: str, value):
        self.run_data["content"][key] = value
        self._save_json()

    def _save_json(self):
        with open(self.json_file, 'w') as f:
            json.dump(self.run_data, f, indent=2, default=_jsonable)


def setup_run_logging(log_dir: str = "logs"):
    logs_dir = Path(log_dir)
    logs_dir.mkdir(parents=True, exist_ok=True)

    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    log_file = logs_dir / f"run_{timestamp}.log"
    json_file = logs_dir / f"run_{timestamp}.json"

    file_handler = logging.FileHandler(log_file)
    file_handler.setLevel(logging.DEBUG)
    file_handler.setFormatter(logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s'))

    # Attach to the package logger so module loggers (sparsecut.*) reach the file
    run_logger = logging.getLogger('sparsecut')
    run_logger.addHandler(file_handler)

    json_handler = JSONRunHandler(json_file)
    run_logger.json_handler = json_handler

    return str(log_file), str(json_file), run_logger, json_handler



def get_json_handler():
    return getattr(logging.getLogger('sparsecut'), 'json_handler', None)
