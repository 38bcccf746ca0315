class TableMeter:
    """Counts live DP-table entries and remembers the peak.

    Solvers call :meth:`alloc` / :meth:`free` around every table whose size
    grows with the search space, so peak memory can be asserted in tests
    without depending on allocator behaviour.
    """

    def __init__(self):
        self.current = 0
        self.peak = 0
        self.score_evals = 0

    def alloc(self, entries):
        self.current += int(entries)
        if self.current > self.peak:
            self.peak = self.current

    def free(self, entries):
        self.current -= int(entries)

    def merge(self, other):
        self.peak = max(self.peak, other.peak)
        self.score_evals += other.score_evals
