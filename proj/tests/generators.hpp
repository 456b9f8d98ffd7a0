#pragma once

// Random but always-valid model documents for the engine/oracle equivalence
// tests. Generated as text so every generated case also exercises the parser.

#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace testgen {

inline std::string random_model_text(std::mt19937& rng, unsigned index) {
    auto pick = [&](int bound) {
        return static_cast<int>(rng() % static_cast<unsigned>(bound));
    };

    std::ostringstream out;
    out << "version 1\n";
    out << "model gen" << index << "\n";

    const char* kinds[] = {"owner", "verifier", "issuer", "system", "generic"};
    int actor_count = 1 + pick(3);  // 1..3
    std::vector<std::string> actors;
    std::string owner_id;
    for (int i = 0; i < actor_count; ++i) {
        std::string id = "a" + std::to_string(i);
        const char* kind = kinds[pick(5)];
        actors.push_back(id);
        out << "actor " << kind << ' ' << id << "\n";
        if (owner_id.empty() && std::string(kind) == "owner") owner_id = id;
    }
    // A paired wallet joins the cast when an owner exists; Ax6 needs the
    // wallet/system distinction to matter in some of the cases.
    if (!owner_id.empty() && pick(2) == 0 && actor_count < 3) {
        std::string id = "w0";
        actors.push_back(id);
        out << "actor wallet " << id << " of=" << owner_id << "\n";
    }

    int data_count = pick(3);     // 0..2
    int service_count = pick(3);  // 0..2
    std::vector<std::string> data;
    std::vector<std::string> services;
    std::vector<std::string> everything;
    for (int i = 0; i < data_count; ++i) {
        std::string id = "d" + std::to_string(i);
        data.push_back(id);
        everything.push_back(id);
        out << "data " << id;
        if (pick(2) == 0) out << (pick(2) == 0 ? " class=credential" : " class=personal");
        out << "\n";
    }
    for (int i = 0; i < service_count; ++i) {
        std::string id = "s" + std::to_string(i);
        services.push_back(id);
        everything.push_back(id);
        out << "service " << id;
        if (!data.empty() && pick(2) == 0) {
            out << " requires=" << data[static_cast<size_t>(pick(data_count))];
        }
        out << "\n";
    }

    if (everything.empty() || actors.empty()) return out.str();

    const char* any_sort[] = {"owns", "has", "offers"};
    const char* data_sort[] = {"presents", "stores", "retrieves"};
    const char* service_sort[] = {"requests", "fulfills"};
    int fact_count = pick(13);  // 0..12
    for (int i = 0; i < fact_count; ++i) {
        std::string subject = actors[static_cast<size_t>(pick(static_cast<int>(actors.size())))];
        std::string relation;
        std::string object;
        switch (pick(3)) {
            case 0:
                relation = any_sort[pick(3)];
                object = everything[static_cast<size_t>(pick(static_cast<int>(everything.size())))];
                break;
            case 1:
                if (data.empty()) continue;
                relation = data_sort[pick(3)];
                object = data[static_cast<size_t>(pick(data_count))];
                break;
            default:
                if (services.empty()) continue;
                relation = service_sort[pick(2)];
                object = services[static_cast<size_t>(pick(service_count))];
                break;
        }
        out << "fact " << relation << ' ' << subject << ' ' << object;
        if (pick(4) == 0) {
            out << " to=" << actors[static_cast<size_t>(pick(static_cast<int>(actors.size())))];
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace testgen
