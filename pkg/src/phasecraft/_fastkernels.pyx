# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled measurement kernels: parity signal and photon-counting Fisher
information on a phase grid.  Mirrors _kernels_py exactly; the python
module is the fallback when this extension is not built."""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin

cnp.import_array()

BACKEND_NAME = "cython"


def loss_background_weights(p, double p0, double transmittance):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] pv = np.ascontiguousarray(p, dtype=np.float64)
    cdef Py_ssize_t n_max = pv.shape[0] - 1
    cdef cnp.ndarray[cnp.float64_t, ndim=1] d = np.zeros(n_max + 1)
    cdef double r = 1.0 - transmittance
    cdef double acc, c, rk, tm
    cdef Py_ssize_t m, k
    tm = 1.0
    for m in range(n_max + 1):
        acc = 0.0
        c = 1.0
        rk = 1.0
        for k in range(1, n_max - m + 1):
            c *= (<double>(m + k)) / (<double>k)
            rk *= r
            acc += pv[m + k] * c * rk
        d[m] = tm / (2.0 * (1.0 + p0)) * acc
        tm *= transmittance
    return d


def parity_curve(p, double p0, double transmittance, phis):
    # accumulates the gap 1 - mu from non-negative terms
    # (1 - R^n - T^n) + 2 T^n sin^2(n phi / 2), so mu stays fully
    # significant near 1 where 1 - mu^2 would otherwise cancel
    cdef cnp.ndarray[cnp.float64_t, ndim=1] pv = np.ascontiguousarray(p, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ph = np.atleast_1d(
        np.ascontiguousarray(phis, dtype=np.float64))
    cdef Py_ssize_t n_max = pv.shape[0] - 1
    cdef Py_ssize_t n_phi = ph.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] mu = np.zeros(n_phi)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] dmu = np.zeros(n_phi)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] gap = np.zeros(n_phi)
    cdef double r = 1.0 - transmittance
    cdef double norm = 1.0 + p0
    cdef double tn, rn, phi, acc_gap, acc_dmu, half
    cdef Py_ssize_t i, n
    for i in range(n_phi):
        phi = ph[i]
        acc_gap = 0.0
        acc_dmu = 0.0
        tn = transmittance
        rn = r
        for n in range(1, n_max + 1):
            half = sin(0.5 * n * phi)
            acc_gap += pv[n] * ((1.0 - rn - tn) + 2.0 * tn * half * half)
            acc_dmu -= pv[n] * tn * n * sin(n * phi)
            tn *= transmittance
            rn *= r
        gap[i] = acc_gap / norm
        mu[i] = 1.0 - gap[i]
        dmu[i] = acc_dmu / norm
    return mu, dmu, gap


def fi_curve(p, double p0, double transmittance, phis):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] pv = np.ascontiguousarray(p, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ph = np.atleast_1d(
        np.ascontiguousarray(phis, dtype=np.float64))
    cdef Py_ssize_t n_max = pv.shape[0] - 1
    cdef Py_ssize_t n_phi = ph.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] d = loss_background_weights(pv, p0, transmittance)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] a = np.zeros(n_max + 1)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] fi = np.zeros(n_phi)
    cdef double tm = 1.0
    cdef Py_ssize_t m, i
    cdef double phi, acc, c, s, num
    for m in range(n_max + 1):
        a[m] = pv[m] * tm / (2.0 * (1.0 + p0))
        tm *= transmittance
    for i in range(n_phi):
        phi = ph[i]
        acc = 0.0
        for m in range(1, n_max + 1):
            if a[m] == 0.0:
                continue
            c = cos(m * phi)
            if d[m] == 0.0:
                acc += 2.0 * a[m] * m * m
            else:
                s = sin(m * phi)
                num = a[m] * m * s
                num = num * num
                acc += num / (a[m] * (1.0 + c) + d[m])
                acc += num / (a[m] * (1.0 - c) + d[m])
        fi[i] = acc
    return fi
