import sys

from tqdm import tqdm


class ProgressReporter:
    """Receives (progress, status) callbacks and draws them as a bar on stderr."""

    def __init__(self, enabled: bool = True, total: float = 100):
        self.enabled = enabled
        self.total = total
        self._bar = None

    def update(self, progress: float, status: str):
        if not self.enabled:
            return
        if self._bar is None:
            self._bar = tqdm(total=self.total, file=sys.stderr, leave=False,
                             bar_format="{desc} {percentage:3.0f}%|{bar}|")
        self._bar.set_description_str(status)
        self._bar.n = min(progress, self.total)
        self._bar.refresh()

    def close(self):
        if self._bar is not None:
            self._bar.close()
            self._bar = None

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()
        return False
