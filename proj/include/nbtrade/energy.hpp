#pragma once

namespace nbtrade {

// Device power draw per radio state, plus the battery budget.  Shared by the
// access and link cost models.
struct EnergyProfile {
    double p_listen_w = 0.1;    // P_l, receive/listen
    double p_idle_w = 0.2;      // P_I, connected but idle
    double p_tx_w = 0.2;        // P_t, transmit RF
    double p_circuit_w = 0.01;  // P_c, transmit circuit overhead
    double amp_efficiency = 1.0; // P_e; no separate value is given, folded into p_tx_w
    double battery_j = 1000.0;  // E_0
    double sync_latency_s = 0.33; // L_sync, cell search + MIB/SIB acquisition
};

} // namespace nbtrade
