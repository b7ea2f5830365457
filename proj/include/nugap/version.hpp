#pragma once

#define NUGAP_VERSION "0.1.0"
