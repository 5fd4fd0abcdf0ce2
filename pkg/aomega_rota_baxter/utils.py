"""
Utilities
"""

from concurrent.futures import ThreadPoolExecutor
import json
import re
from typing import Any, Callable, List, Mapping, Sequence, Tuple, TypeVar

T = TypeVar('T')
R = TypeVar('R')

_WINDOW_PATTERN = re.compile(r'^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$')


def parse_window(text: str) -> Tuple[int, int]:
    """Parse an inclusive window written as "LO..HI".

    Args:
        text (str): The window text.

    Raises:
        ValueError: If the text is malformed or LO > HI.

    Returns:
        Tuple[int, int]: The bounds.
    """
    match = _WINDOW_PATTERN.match(text)
    if match is None:
        raise ValueError(f'Expected a window "LO..HI", got "{text}"')
    lo, hi = int(match.group(1)), int(match.group(2))
    if lo > hi:
        raise ValueError(f'Window "{text}" has LO > HI')
    return lo, hi


def partition(items: Sequence[T], parts: int) -> List[Sequence[T]]:
    """Split a sequence into at most ``parts`` contiguous, non-empty chunks"""
    if parts <= 1 or len(items) <= 1:
        return [items] if items else []
    parts = min(parts, len(items))
    size, extra = divmod(len(items), parts)
    chunks: List[Sequence[T]] = []
    start = 0
    for index in range(parts):
        end = start + size + (1 if index < extra else 0)
        chunks.append(items[start:end])
        start = end
    return chunks


def run_partitioned(
        task: Callable[[Sequence[T]], R],
        items: Sequence[T],
        workers: int
) -> List[R]:
    """Run a task over partitions of the items.

    With one worker the task runs in the calling thread. Otherwise the
    partitions run on a thread pool; the checks are pure Python and hold the
    interpreter lock, so more workers split the work without speeding it up.
    Results come back in partition order so merging them is deterministic.

    Args:
        task (Callable[[Sequence[T]], R]): The work for one partition.
        items (Sequence[T]): The items to partition.
        workers (int): The number of concurrent workers.

    Returns:
        List[R]: One result per partition.
    """
    chunks = partition(items, workers)
    if workers <= 1 or len(chunks) <= 1:
        return [task(chunk) for chunk in chunks]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(task, chunks))


def dumps(obj: Any) -> str:
    """Deterministic JSON: sorted keys, two space indent"""
    return json.dumps(obj, sort_keys=True, indent=2)


def parse_assignments(text: str) -> List[Tuple[int, str]]:
    """Parse "m=v,m=v" pairs keeping the value text.

    Args:
        text (str): The comma separated assignments.

    Raises:
        ValueError: If a pair is malformed or an index repeats.

    Returns:
        List[Tuple[int, str]]: The index and the raw value text.
    """
    pairs: List[Tuple[int, str]] = []
    seen = set()
    for item in text.split(','):
        item = item.strip()
        if not item:
            continue
        index, sep, value = item.partition('=')
        if not sep:
            raise ValueError(f'Expected "index=value", got "{item}"')
        key = int(index.strip())
        if key in seen:
            raise ValueError(f'Index {key} assigned twice')
        seen.add(key)
        pairs.append((key, value.strip()))
    return pairs


def sorted_items(mapping: Mapping[int, T]) -> List[Tuple[int, T]]:
    """The items of an integer keyed mapping in key order"""
    return sorted(mapping.items(), key=lambda item: item[0])
