#include <pybind11/pybind11.h>
PYBIND11_MODULE(_heatkit, m) { m.doc() = "heat kernel toolkit"; }
