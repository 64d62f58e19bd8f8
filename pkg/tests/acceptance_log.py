"""Shared store for acceptance verdict lines (printed in the terminal summary)."""

LINES: list[str] = []


def verdict(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"criterion {number:2d} {title}: {'PASS' if ok else 'FAIL'} ({detail})"
    LINES.append(line)
    print(line)
    assert ok, line
