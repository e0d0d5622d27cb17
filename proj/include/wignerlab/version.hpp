#pragma once

#define WIGNERLAB_VERSION "0.1.0"
