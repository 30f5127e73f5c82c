"""Exception and warning types shared across the pulse pipeline."""


class PulseError(Exception):
    """Base class for all pulse errors; the CLI maps these to exit code 2."""


# --- ingest: news records ---

class MalformedRecord(PulseError):
    """A news record line that cannot be parsed (wrong column count, bad date/tone)."""


class SourceUnreadable(PulseError):
    """I/O failure on an input stream; aborts that stream only."""


# --- bias registry ---

class UnknownLabel(PulseError):
    """A bias label outside the rater's allowed vocabulary."""


class DuplicatePublisher(PulseError):
    """The same publisher appears twice within a single ratings file."""


# --- signal loaders ---

class EmptyInput(PulseError):
    """An input file with no usable data rows."""


class WrongKind(PulseError):
    """A series of the wrong kind was passed (e.g. non-cumulative to new_daily)."""


class NonFinite(PulseError):
    """A value that must be finite is NaN or infinite."""


class MissingWeekday(PulseError):
    """A baseline window with no observation for some weekday."""


class UnknownCategory(PulseError):
    """A mobility column outside the six documented categories."""


class DuplicateDate(PulseError):
    """Two rows for the same (region, date) in a series input."""


class MissingPopulation(PulseError):
    """A count-valued demographic row for a state with no population row."""


class PercentOutOfRange(PulseError):
    """A demographic percentage outside [0, 100]."""


class NegativeShare(PulseError):
    """A negative search-share value."""


class ShareSumError(PulseError):
    """A share-type demographic group that does not sum to 100 within tolerance."""


class NonMonotoneWarning(UserWarning):
    """Cumulative series decreased between consecutive dates (upstream correction)."""


# --- analytics ---

class WrongGranularity(PulseError):
    """A count series with unexpected granularity."""


class ZeroTotal(PulseError):
    """Normalization requested for a series that sums to zero."""


class LengthMismatch(PulseError):
    """Paired series of different lengths."""


class ZeroVariance(PulseError):
    """A correlation input with no variance."""


class EmptyCorpus(PulseError):
    """Share computation over zero articles."""


# --- store / API ---

class DuplicateKeyInBatch(PulseError):
    """The same aggregate key appears twice in one write batch."""


class StorageFull(PulseError):
    """The storage device rejected a write for lack of space."""


class CorruptStore(PulseError):
    """The store directory fails manifest validation."""


class BindFailure(PulseError):
    """The API server could not bind its address."""


class InvalidSeries(PulseError):
    """A signal series violating its ordering or range invariants."""
