"""Shared store for acceptance verdicts, printed at the end of the run."""

RESULTS: dict[str, tuple[bool, str]] = {}


def record(key: str, ok: bool, detail: str) -> None:
    RESULTS[key] = (ok, detail)
    print(f"{'PASS' if ok else 'FAIL'} {key}: {detail}", flush=True)
