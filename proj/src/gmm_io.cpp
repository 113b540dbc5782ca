// SPDX-License-Identifier: Apache-2.0
//
// physec - channel based message authentication toolkit
// Copyright (C) 2026 The physec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "physec/number_format.hpp"
#include "physec/gmm_detector.hpp"

// Layout:
//   K=<int>
//   M=<int>
//   floor=<real>
//   trained_on=<int>
//   <weight>,<M means>,<M variances>     one line per component
//   threshold=<real>|none

namespace physec {

namespace {

std::string read_value(std::istream &in, const std::string &key)
{
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("Model file ends before '" + key + "'.");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    const std::string prefix = key + "=";
    if (line.rfind(prefix, 0) != 0)
        throw std::runtime_error("Model file: expected '" + prefix + "', got '" + line + "'.");
    return line.substr(prefix.size());
}

std::size_t read_count(std::istream &in, const std::string &key)
{
    const auto text = read_value(in, key);
    const auto v = parse_int<std::size_t>(text);
    if (!v)
        throw std::runtime_error("Model file: invalid integer for '" + key + "'.");
    return *v;
}

} // namespace

void write_model(const GmmModel &model, std::ostream &out)
{
    model.validate();
    out << "K=" << model.num_components() << '\n';
    out << "M=" << model.dimension() << '\n';
    out << "floor=" << format_double(model.variance_floor) << '\n';
    out << "trained_on=" << model.trained_on << '\n';
    for (std::size_t k = 0; k < model.num_components(); ++k)
    {
        out << format_double(model.weights[k]);
        for (double v : model.means[k])
            out << ',' << format_double(v);
        for (double v : model.variances[k])
            out << ',' << format_double(v);
        out << '\n';
    }
    out << "threshold=" << (model.threshold ? format_double(*model.threshold) : std::string("none")) << '\n';
    if (!out)
        throw std::runtime_error("Failed to write model.");
}

GmmModel read_model(std::istream &in)
{
    GmmModel model;
    const std::size_t K = read_count(in, "K");
    const std::size_t M = read_count(in, "M");
    if (K == 0 || M == 0)
        throw std::runtime_error("Model file: K and M must be positive.");
    const auto floor = parse_double(read_value(in, "floor"));
    if (!floor)
        throw std::runtime_error("Model file: invalid variance floor.");
    model.variance_floor = *floor;
    model.trained_on = read_count(in, "trained_on");

    for (std::size_t k = 0; k < K; ++k)
    {
        std::string line;
        if (!std::getline(in, line))
            throw std::runtime_error("Model file ends inside the component list.");
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        std::vector<double> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ','))
        {
            const auto v = parse_double(field);
            if (!v)
                throw std::runtime_error("Model file: invalid number in component " + std::to_string(k) + ".");
            fields.push_back(*v);
        }
        if (fields.size() != 1 + 2 * M)
            throw std::runtime_error("Model file: component " + std::to_string(k) + " has the wrong field count.");
        model.weights.push_back(fields[0]);
        model.means.emplace_back(fields.begin() + 1, fields.begin() + 1 + static_cast<std::ptrdiff_t>(M));
        model.variances.emplace_back(fields.begin() + 1 + static_cast<std::ptrdiff_t>(M), fields.end());
    }

    const auto thr = read_value(in, "threshold");
    if (thr != "none")
    {
        const auto v = parse_double(thr);
        if (!v)
            throw std::runtime_error("Model file: invalid threshold.");
        model.threshold = *v;
    }

    try
    {
        model.validate();
    }
    catch (const std::invalid_argument &e)
    {
        throw std::runtime_error(std::string("Model file: ") + e.what());
    }
    return model;
}

} // namespace physec
