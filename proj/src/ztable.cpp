#include "randfib/ztable.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace randfib {

ZTable z_table(const Params& params, std::size_t n_max) {
    if (n_max < 1) {
        throw IndexError("z_table: requires N >= 1");
    }
    const double a = params.a;
    const double b = params.b;

    ZTable table;
    table.params = params;
    table.values.resize(n_max + 1);
    table.log_values.resize(n_max + 1);

    table.values[0] = 1.0;
    table.values[1] = a;
    table.log_values[0] = 0.0;
    table.log_values[1] = std::log(a);

    for (std::size_t n = 1; n < n_max; ++n) {
        const double z = a * table.values[n] + b * table.values[n - 1];
        table.values[n + 1] = z;
        if (!std::isfinite(z) && !table.overflow_index) {
            table.overflow_index = n + 1;
        }
        // Z_{n+1} = Z_n * (a + b * Z_{n-1}/Z_n); the ratio form never overflows.
        const double ratio = std::exp(table.log_values[n - 1] - table.log_values[n]);
        table.log_values[n + 1] = table.log_values[n] + std::log(a + b * ratio);
    }
    return table;
}

double state_ratio_log(const ZTable& table, std::size_t k) {
    if (k < 1 || k > table.max_index()) {
        std::ostringstream msg;
        msg << "state_ratio: index k=" << k << " outside table range [1, "
            << table.max_index() << "]";
        throw IndexError(msg.str());
    }
    return table.log_values[k - 1] - table.log_values[k];
}

double state_ratio(const ZTable& table, std::size_t k) {
    if (k == 1) {
        if (table.max_index() < 1) {
            throw IndexError("state_ratio: empty table");
        }
        return 1.0 / table.params.a;
    }
    return std::exp(state_ratio_log(table, k));
}

} // namespace randfib
