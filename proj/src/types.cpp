#include "solidsum/types.hpp"

namespace solidsum {

const char* to_string(Provenance provenance)
{
    switch (provenance) {
    case Provenance::Exact: return "exact";
    case Provenance::Quadrature: return "quadrature";
    case Provenance::MonteCarlo: return "monte_carlo";
    case Provenance::Extrapolated: return "extrapolated";
    }
    return "unknown";
}

}  // namespace solidsum
