"""Tiny sink helpers: accept an open file object or a filesystem path."""


def write_bytes(destination, data: bytes) -> None:
    if hasattr(destination, "write"):
        destination.write(data)
        return
    with open(destination, "wb") as handle:
        handle.write(data)


def write_text(destination, text: str) -> None:
    if hasattr(destination, "write"):
        destination.write(text)
        return
    with open(destination, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)
