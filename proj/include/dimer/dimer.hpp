#pragma once

#include "dimer/coherent.hpp"
#include "dimer/dynamics.hpp"
#include "dimer/eigensystem.hpp"
#include "dimer/fock.hpp"
#include "dimer/hamiltonian.hpp"
#include "dimer/matrix.hpp"
#include "dimer/oracle.hpp"
#include "dimer/records.hpp"
#include "dimer/report.hpp"
#include "dimer/selftest.hpp"
