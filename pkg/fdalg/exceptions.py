#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Errors raised by fdalg.

The ``exit_status`` of each class is the status the command line front end
exits with when the error escapes a command.
"""


class FdAlgError(Exception):
    exit_status = 2

    def __init__(self, message='', witness=None):
        super(FdAlgError, self).__init__(message)
        self.witness = witness

    @property
    def name(self):
        return type(self).__name__

    def as_dict(self):
        out = {'error': self.name, 'message': str(self)}
        if self.witness is not None:
            out['witness'] = self.witness
        return out


class ParseError(FdAlgError):
    exit_status = 1


class ConfigurationError(FdAlgError):
    exit_status = 1


class PreconditionError(FdAlgError):
    exit_status = 2


class InvalidDimensions(PreconditionError):
    pass


class AlgebraMismatch(PreconditionError):
    pass


class ShapeMismatch(PreconditionError):
    pass


class NotSelfAdjoint(PreconditionError):
    pass


class NotPositive(PreconditionError):
    pass


class NotEffect(PreconditionError):
    pass


class NotProjection(PreconditionError):
    pass


class NotNormal(PreconditionError):
    pass


class FunctionUndefined(PreconditionError):
    pass


class DivisionUndefined(PreconditionError):
    pass


class QuotientUndefined(PreconditionError):
    pass


class FilterBoundViolated(PreconditionError):
    pass


class CarrierViolated(PreconditionError):
    pass


class ClosureViolated(PreconditionError):
    pass


class NotCommutative(PreconditionError):
    pass


class PropertyFailure(FdAlgError):
    """A property that should hold by theory failed numerically."""
    exit_status = 3
