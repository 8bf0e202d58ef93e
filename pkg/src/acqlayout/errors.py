"""Exception types raised across the package."""


class AcqlayoutError(Exception):
    """Base class for all errors raised by this package."""


# --- archive / raster store ---

class MissingFile(AcqlayoutError):
    pass


class MalformedRow(AcqlayoutError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class DuplicatePatchId(AcqlayoutError):
    def __init__(self, patch_id: str):
        super().__init__(f"duplicate patch_id {patch_id!r}")
        self.patch_id = patch_id


class DimensionMismatch(AcqlayoutError):
    pass


class MissingPatch(AcqlayoutError):
    def __init__(self, patch_id: str):
        super().__init__(f"no raster stored for patch_id {patch_id!r}")
        self.patch_id = patch_id


class CorruptHeader(AcqlayoutError):
    pass


# --- layouts ---

class LayoutError(AcqlayoutError):
    pass


class LayoutSyntaxError(LayoutError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class NoReferenceItem(LayoutError):
    pass


class DuplicateReferenceItem(LayoutError):
    pass


class DuplicateItemName(LayoutError):
    def __init__(self, name: str):
        super().__init__(f"duplicate item name {name!r}")
        self.name = name


class InvalidRange(LayoutError):
    def __init__(self, field: str, reason: str = ""):
        msg = f"invalid range for {field!r}"
        if reason:
            msg = f"{msg}: {reason}"
        super().__init__(msg)
        self.field = field


# --- sampling ---

class BadFractions(AcqlayoutError):
    pass


class InfeasibleLayout(AcqlayoutError):
    pass


# --- reconstruction backends ---

class DegenerateInterval(AcqlayoutError):
    pass


class MissingBinding(AcqlayoutError):
    def __init__(self, item: str):
        super().__init__(f"manifest sample lacks required binding {item!r}")
        self.item = item


class MissingPrediction(AcqlayoutError):
    def __init__(self, sample_id: str):
        super().__init__(f"no prediction for sample {sample_id!r}")
        self.sample_id = sample_id


# --- metrics ---

class NegativeMse(AcqlayoutError):
    pass


class EmptyOverlap(AcqlayoutError):
    pass


class PatchTooSmall(AcqlayoutError):
    pass


class MissingReference(AcqlayoutError):
    def __init__(self, patch_id: str):
        super().__init__(f"no reference raster for patch {patch_id!r}")
        self.patch_id = patch_id


# --- synthetic archives ---

class BadSpec(AcqlayoutError):
    pass
