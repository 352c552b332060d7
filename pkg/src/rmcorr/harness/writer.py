from __future__ import annotations

import json
import logging
import os
import pathlib
import threading
from typing import Dict, List, Union

import pandas as pd


class ArtifactWriter:
    """Stages CSV tables and JSON reports in memory and writes them to disk in one go.

    Nothing touches the destination folder until commit() is called, so a failing run leaves no partial output.
    """

    def __init__(self, dest_dir: Union[str, os.PathLike]):
        self.dest_dir = pathlib.Path(dest_dir)
        self._staged: Dict[str, str] = dict()
        self._lock = threading.Lock()

    def _stage(self, name: str, content: str):
        with self._lock:
            if name in self._staged:
                raise ValueError(f'Artifact "{name}" is already staged')
            self._staged[name] = content

    def add_frame(self, name: str, df: pd.DataFrame):
        self._stage(name, df.to_csv(index=False, float_format="%.17g", lineterminator="\n"))

    def add_json(self, name: str, obj: dict):
        self._stage(name, json.dumps(obj, indent=2, sort_keys=False) + "\n")

    @property
    def names(self) -> List[str]:
        return list(self._staged.keys())

    def __len__(self):
        return len(self._staged)

    def commit(self) -> List[pathlib.Path]:
        os.makedirs(self.dest_dir, exist_ok=True)
        written = []
        with self._lock:
            for name, content in self._staged.items():
                dest = self.dest_dir / name
                with open(dest, "w", newline="") as f:
                    f.write(content)
                written.append(dest)
        logging.info(f'Wrote {len(written)} files to "{self.dest_dir}"')
        return written
