/*
   Copyright 2026 The vortexmf Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "vortexmf/torus.hpp"

#include "vortexmf/error.hpp"

#include <string>

namespace vortexmf {

TorusPoint wrap(Vec2 p)
{
    if (!std::isfinite(p.x1) || !std::isfinite(p.x2))
        throw DomainError("wrap: non-finite coordinate (" + std::to_string(p.x1) + ", " +
                          std::to_string(p.x2) + ")");
    return TorusPoint::wrap_unchecked(p);
}

} // namespace vortexmf
