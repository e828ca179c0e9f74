// Copyright 2026 The cads Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "cads/model.hpp"

namespace testutil {

/// The five-microservice flight-booking application. Variant A uses
/// uc = 20000 and the higher per-version QoE annotations, variant B
/// uc = 5000 and the lower ones.
inline cads::ApplicationModel make_flight_booking(bool variant_a) {
    using cads::Microservice;
    using cads::VersionSpec;
    const std::uint64_t uc = variant_a ? 20000 : 5000;
    cads::ApplicationModel app;
    app.name = variant_a ? "flight_booking_a" : "flight_booking_b";

    Microservice search{"flight_search", false, {}};
    search.versions.push_back(
        VersionSpec{"low_power", "t3.micro", 13.0, 0.5, uc, variant_a ? 0.5 : 0.1, 0.0});
    search.versions.push_back(
        VersionSpec{"normal", "t3.xlarge", 39.9, 0.7, uc, variant_a ? 0.75 : 0.3, 0.0});
    search.versions.push_back(
        VersionSpec{"high_performance", "g2.2xlarge", 305.4, 0.9, uc, 1.0, 0.0});
    app.microservices.push_back(search);

    Microservice weather{"weather_information", true, {}};
    weather.versions.push_back(VersionSpec{"off", std::nullopt, 0.0, 0.9, std::nullopt, 0.0, 0.0});
    weather.versions.push_back(VersionSpec{"normal", "t3.micro", 13.0, 1.0, uc, 1.0, 0.2});
    app.microservices.push_back(weather);

    Microservice booking{"flight_booking", false, {}};
    booking.versions.push_back(
        VersionSpec{"low_power", "t3.micro", 13.0, 0.5, uc, variant_a ? 0.5 : 0.1, 0.0});
    booking.versions.push_back(VersionSpec{"normal", "t3.xlarge", 39.9, 0.95, uc, 1.0, 0.0});
    app.microservices.push_back(booking);

    Microservice rental{"rental_car_booking", true, {}};
    rental.versions.push_back(VersionSpec{"off", std::nullopt, 0.0, 0.75, std::nullopt, 0.0, 0.0});
    rental.versions.push_back(
        VersionSpec{"normal", "t3.xlarge", 39.9, 0.9, uc, variant_a ? 0.75 : 0.3, 2.0});
    rental.versions.push_back(
        VersionSpec{"high_performance", "g2.2xlarge", 305.4, 1.0, uc, 1.0, 2.0});
    app.microservices.push_back(rental);

    Microservice payment{"payment", false, {}};
    payment.versions.push_back(VersionSpec{"normal", "t3.xlarge", 39.9, 0.99, uc, 1.0, 0.0});
    app.microservices.push_back(payment);

    cads::validate_application(app);
    return app;
}

inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

/// Random valid application with up to `max_ms` microservices of up to
/// `max_versions` versions each. The configuration-space size is capped so
/// exhaustive comparisons stay affordable.
inline cads::ApplicationModel random_app(std::mt19937_64& rng, int max_ms = 10,
                                         int max_versions = 4,
                                         std::uint64_t max_configs = 20000) {
    using cads::Microservice;
    using cads::VersionSpec;
    for (int attempt = 0;; ++attempt) {
        cads::ApplicationModel app;
        app.name = "synthetic";
        app.alpha = uniform_in(rng, 0.1, 1.0);
        app.beta = uniform_in(rng, 0.1, 1.0);
        const int n_ms = std::uniform_int_distribution<int>(1, max_ms)(rng);
        std::uint64_t configs = 1;
        for (int i = 0; i < n_ms; ++i) {
            Microservice ms;
            ms.name = "ms" + std::to_string(i);
            ms.optional = std::uniform_int_distribution<int>(0, 9)(rng) < 3;
            int powered = std::uniform_int_distribution<int>(1, max_versions)(rng);
            if (ms.optional) {
                powered = std::min(powered, max_versions - 1);
                ms.versions.push_back(VersionSpec{"off", std::nullopt, 0.0,
                                                  uniform_in(rng, 0.5, 1.0), std::nullopt, 0.0,
                                                  0.0});
            }
            for (int v = 0; v < powered; ++v) {
                VersionSpec ver;
                ver.name = "v" + std::to_string(v);
                ver.ed_watts = uniform_in(rng, 5.0, 400.0);
                ver.q = uniform_in(rng, 0.3, 1.0);
                ver.uc = std::uniform_int_distribution<std::uint64_t>(1000, 30000)(rng);
                ver.qoe = uniform_in(rng, 0.0, 1.0);
                ver.rev = std::uniform_int_distribution<int>(0, 1)(rng) == 0
                              ? 0.0
                              : uniform_in(rng, 0.1, 3.0);
                ms.versions.push_back(ver);
            }
            configs *= ms.versions.size();
            app.microservices.push_back(std::move(ms));
        }
        if (configs > max_configs && attempt < 100) {
            continue;
        }
        cads::validate_application(app);
        return app;
    }
}

}  // namespace testutil
