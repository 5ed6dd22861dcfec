import asyncio
from concurrent.futures import ThreadPoolExecutor
from contextlib import asynccontextmanager


class WorkerPool:
    def __init__(self, max_workers: int):
        """
        Initialize WorkerPool with bounded concurrency.

        Args:
            max_workers: Maximum number of concurrent workers. numpy, scipy
                and the cvxpy backends release the GIL in their kernels, so
                threads give real overlap for per-seed pipeline runs.
        """
        self.max_workers = max_workers
        self.executor = ThreadPoolExecutor(max_workers=max_workers)
        self.semaphore = asyncio.Semaphore(max_workers)

    @asynccontextmanager
    async def throttle(self):
        """Limit the number of jobs submitted by this pool at once."""
        async with self.semaphore:
            yield

    async def run(self, fn, *args):
        """Run a blocking callable on the pool under the throttle."""
        loop = asyncio.get_running_loop()
        async with self.throttle():
            return await loop.run_in_executor(self.executor, fn, *args)

    def shutdown(self) -> None:
        self.executor.shutdown(wait=True)
