import concurrent.futures
import typing

T = typing.TypeVar('T')
R = typing.TypeVar('R')


def map_ordered(
        func: typing.Callable[[T], R], items: typing.Iterable[T], jobs: int = 1,
) -> typing.List[R]:
    """
    Applies `func` to every item, in a process pool when `jobs` > 1.
    Results keep the order of `items`; `func` must be picklable.
    """
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, items))
