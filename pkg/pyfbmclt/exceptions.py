class PyFbmCltException(Exception):
    def __init__(self, message, errors=None):
        Exception.__init__(self, message)
        # errors is a list of tuples made this way:
        # ( kind, detail )
        self.errors = errors or []

    def __str__(self):
        if self.errors:
            return "%s - %s" % (Exception.__str__(self), self.errors[0][1])
        else:
            return Exception.__str__(self)


class PyFbmCltDomainException(PyFbmCltException):
    pass


class PyFbmCltRegimeException(PyFbmCltDomainException):
    pass


class PyFbmCltGenerationException(PyFbmCltException):

    def __init__(self, message, min_eigenvalue, errors=None):
        PyFbmCltException.__init__(self, message, errors)
        self.min_eigenvalue = min_eigenvalue


class PyFbmCltQuadratureException(PyFbmCltException):

    def __init__(self, message, last_error, errors=None):
        PyFbmCltException.__init__(self, message, errors)
        self.last_error = last_error


class PyFbmCltPreconditionException(PyFbmCltException):
    pass


class PyFbmCltUnsupportedException(PyFbmCltException):
    pass


class PyFbmCltVerificationException(PyFbmCltException):
    pass


class PyFbmCltUsageException(PyFbmCltException):
    pass


class PyFbmCltIOException(PyFbmCltException):

    def __init__(self, message, path, errors=None):
        PyFbmCltException.__init__(self, message, errors)
        self.path = path
