__author__ = 'pyfbmclt developers'
