class BoojumError(ValueError):
    """ Generic error class, carries a coded error response
    """

    def __init__(self, error_response):
        self.error_response = error_response
        msg = "Boojum error code %s (%s)" % \
              (error_response['code'], error_response['message'])
        if error_response.get('description'):
            msg += ": %s" % error_response['description']

        super(BoojumError, self).__init__(msg)

    @property
    def code(self):
        return self.error_response['code']

    @property
    def description(self):
        return self.error_response.get('description', '')


class DomainError(BoojumError):
    def __init__(self, content=''):
        er = dict(code=599, message='Argument outside domain',
                  description=content)
        super(DomainError, self).__init__(er)


class LengthMismatchError(BoojumError):
    def __init__(self, content=''):
        er = dict(code=598, message='Length mismatch', description=content)
        super(LengthMismatchError, self).__init__(er)


class LatticeOverflowError(BoojumError):
    def __init__(self, content=''):
        er = dict(code=597, message='Lattice count overflow',
                  description=content)
        super(LatticeOverflowError, self).__init__(er)


class ImproperParametersError(BoojumError):
    def __init__(self, content=''):
        er = dict(code=596, message='Improper parameters',
                  description=content)
        super(ImproperParametersError, self).__init__(er)


class ResolutionError(BoojumError):
    def __init__(self, content=''):
        er = dict(code=595, message='Insufficient resolution',
                  description=content)
        super(ResolutionError, self).__init__(er)


class UnsupportedOrderError(BoojumError):
    def __init__(self, content=''):
        er = dict(code=594, message='Unsupported moment order',
                  description=content)
        super(UnsupportedOrderError, self).__init__(er)


class StepError(BoojumError):
    def __init__(self, content=''):
        er = dict(code=593, message='Finite difference step too large',
                  description=content)
        super(StepError, self).__init__(er)


class ObservationError(BoojumError):
    def __init__(self, content='', line=None):
        self.line = line
        if line is not None:
            content = "%s at line %d" % (content, line)
        er = dict(code=592, message='Invalid observation',
                  description=content)
        super(ObservationError, self).__init__(er)
