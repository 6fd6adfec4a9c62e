"""Exception hierarchy shared by all quadgit modules."""

from __future__ import annotations


class QuadGitError(Exception):
    """Base class for all errors raised by this package."""


class NQuadsSyntaxError(QuadGitError):
    """Malformed N-Quads input. Carries the 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class CanonicalizationError(QuadGitError):
    """Blank node canonicalization exceeded the permutation budget."""


class ChangesetError(QuadGitError):
    """A delta failed changeset validation against its base graph."""


class NotDisjointWithBaseError(ChangesetError):
    pass


class RemovalNotPresentError(ChangesetError):
    pass


class AddRemoveOverlapError(ChangesetError):
    pass


class EmptyChangesetError(ChangesetError):
    pass


class UnknownObjectError(QuadGitError):
    pass


class CorruptObjectError(QuadGitError):
    pass


class UnknownRefError(QuadGitError):
    pass


class StaleRefError(QuadGitError):
    """Compare-and-set on a ref lost a race; the caller may retry."""


class RefExistsError(QuadGitError):
    pass


class NoCommonAncestorError(QuadGitError):
    pass


class MergeRootRevertError(QuadGitError):
    """The commit to revert has no parent or more than one parent."""


class IncompleteResolutionError(QuadGitError):
    """A conflict resolution does not cover every reported atomic graph."""


class QuerySyntaxError(QuadGitError):
    def __init__(self, message: str, position: int):
        super().__init__(f"at offset {position}: {message}")
        self.position = position


class UnsupportedFeatureError(QuadGitError):
    """Syntactically valid SPARQL outside the supported subset."""

    def __init__(self, feature: str):
        super().__init__(f"unsupported SPARQL feature: {feature}")
        self.feature = feature


class UnreachableRemoteError(QuadGitError):
    pass


class UnknownRemoteBranchError(QuadGitError):
    pass


class NonFastForwardError(QuadGitError):
    """Push rejected: the remote head is not an ancestor of the local head."""


class ConfigError(QuadGitError):
    pass
