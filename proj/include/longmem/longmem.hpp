#ifndef LONGMEM_LONGMEM_HPP
#define LONGMEM_LONGMEM_HPP

#include "longmem/fft.hpp"
#include "longmem/hermite.hpp"
#include "longmem/lab.hpp"
#include "longmem/process.hpp"
#include "longmem/quadrature.hpp"
#include "longmem/rng.hpp"
#include "longmem/spectral.hpp"
#include "longmem/stats.hpp"
#include "longmem/study.hpp"
#include "longmem/timeseries.hpp"
#include "longmem/transform.hpp"

#endif
