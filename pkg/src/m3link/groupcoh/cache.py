"""Optional on-disk cache for solved contracting homotopies.

Enabled by setting ``M3LINK_CACHE_DIR``; files are content-addressed by
group tag, strategy and horizon.
"""

import hashlib
import json
import os
from pathlib import Path


def _path(R):
    root = os.environ.get("M3LINK_CACHE_DIR")
    if not root:
        return None
    key = json.dumps([repr(R.group.kind), R.strategy, R.horizon, R.ranks])
    digest = hashlib.sha256(key.encode()).hexdigest()[:24]
    return Path(root) / f"homotopy-{digest}.json"


def load_homotopy(R):
    path = _path(R)
    if path is None or not path.exists():
        return None
    try:
        raw = json.loads(path.read_text())
    except (OSError, ValueError):
        return None
    return [[{int(k): int(v) for k, v in d.items()} for d in hn] for hn in raw["h"]]


def store_homotopy(R, h):
    path = _path(R)
    if path is None:
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps({"group": repr(R.group.kind), "strategy": R.strategy,
                               "horizon": R.horizon,
                               "h": [[{str(k): str(v) for k, v in d.items()} for d in hn]
                                     for hn in h]}))
    os.replace(tmp, path)
